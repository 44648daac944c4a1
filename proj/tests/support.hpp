#pragma once

#include <complex>
#include <initializer_list>
#include <random>

#include "wproj/hvec.hpp"

namespace wproj::test {

inline constexpr cplx I(0.0, 1.0);

inline ComplexVec vec(std::initializer_list<cplx> xs) {
  ComplexVec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const cplx& x : xs) out[i++] = x;
  return out;
}

inline HomPoint pt(std::initializer_list<cplx> v, std::initializer_list<cplx> w) {
  return HomPoint(vec(v), vec(w));
}

inline double sup(const ComplexVec& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }
inline double sup(const ComplexMat& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

// Components with |re|, |im| in [0.1, 2].
inline ComplexVec random_vec(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::bernoulli_distribution flip(0.5);
  ComplexVec x(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = flip(rng) ? -mag(rng) : mag(rng);
    const double im = flip(rng) ? -mag(rng) : mag(rng);
    x[i] = cplx(re, im);
  }
  return x;
}

inline HomPoint random_point(std::mt19937_64& rng, int n, int m) {
  ComplexVec v = random_vec(rng, n);
  return HomPoint(std::move(v), random_vec(rng, m));
}

inline cplx random_scalar(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> logr(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> arg(-3.14159, 3.14159);
  return std::polar(std::exp(logr(rng)), arg(rng));
}

}  // namespace wproj::test
