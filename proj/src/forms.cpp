#include "wproj/forms.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wproj/error.hpp"

namespace wproj {

namespace {

constexpr cplx kI(0.0, 1.0);

template <class T>
struct WirtingerPair {
  T dz;
  T dzbar;
};

// Central-difference Wirtinger partials of fn at z, one pair per holomorphic
// coordinate. Each real direction uses step h * max(1, |z_j|).
template <class Fn>
auto wirtinger_partials(Fn&& fn, const ComplexVec& z, double h) {
  using T = std::decay_t<decltype(fn(z))>;
  if (!(h >= kMinStep)) throw Error(ErrorCode::StepTooSmall, "step below 1e-12");
  std::vector<WirtingerPair<T>> out;
  out.reserve(static_cast<std::size_t>(z.size()));
  ComplexVec probe = z;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double hj = h * std::max(1.0, std::abs(z[j]));
    probe[j] = z[j] + hj;
    T xp = fn(probe);
    probe[j] = z[j] - hj;
    T xm = fn(probe);
    probe[j] = z[j] + kI * hj;
    T yp = fn(probe);
    probe[j] = z[j] - kI * hj;
    T ym = fn(probe);
    probe[j] = z[j];
    const T dx = (xp - xm) / (2.0 * hj);
    const T dy = (yp - ym) / (2.0 * hj);
    out.push_back({0.5 * (dx - kI * dy), 0.5 * (dx + kI * dy)});
  }
  return out;
}

ComplexVec checked_eval(const SmoothMap& f, const ComplexVec& z) {
  ComplexVec out;
  try {
    out = f.eval(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroVector || e.code() == ErrorCode::DomainViolation ||
        e.code() == ErrorCode::ZeroScalar) {
      throw Error(ErrorCode::DomainViolation, e.what());
    }
    throw;
  }
  if (out.size() != f.codomain.coords()) {
    throw Error(ErrorCode::FrameMismatch, "map output does not match its codomain");
  }
  if (!out.allFinite()) throw Error(ErrorCode::DomainViolation, "map produced non-finite values");
  return out;
}

}  // namespace

int Frame::conjugate(int slot) const noexcept {
  if (slot < n) return slot + n;
  if (slot < 2 * n) return slot - n;
  if (slot < 2 * n + m) return slot + m;
  return slot - m;
}

std::string Frame::label(int slot) const {
  if (slot < n) return "dv" + std::to_string(slot);
  if (slot < 2 * n) return "dvbar" + std::to_string(slot - n);
  if (slot < 2 * n + m) return "dw" + std::to_string(slot - 2 * n);
  return "dwbar" + std::to_string(slot - 2 * n - m);
}

ComplexVec real_tangent(const Frame& frame, const ComplexVec& holo) {
  if (holo.size() != frame.coords()) throw Error(ErrorCode::FrameMismatch, "tangent size");
  ComplexVec out(frame.size());
  for (int j = 0; j < frame.coords(); ++j) {
    out[frame.holo_slot(j)] = holo[j];
    out[frame.conj_slot(j)] = std::conj(holo[j]);
  }
  return out;
}

OneForm OneForm::zero(const Frame& frame) {
  return {frame, ComplexVec::Zero(frame.size())};
}

TwoForm TwoForm::zero(const Frame& frame) {
  return {frame, ComplexMat::Zero(frame.size(), frame.size())};
}

void TwoForm::set(int mu, int nu, cplx value) {
  coeff(mu, nu) = value;
  coeff(nu, mu) = -value;
}

cplx TwoForm::evaluate(const ComplexVec& xi, const ComplexVec& eta) const {
  return xi.transpose() * coeff * eta;
}

double TwoForm::antisymmetry_defect() const {
  if (coeff.size() == 0) return 0.0;
  return (coeff + coeff.transpose()).cwiseAbs().maxCoeff();
}

double TwoForm::max_abs() const {
  return coeff.size() == 0 ? 0.0 : coeff.cwiseAbs().maxCoeff();
}

TwoForm wedge(const OneForm& a, const OneForm& b) {
  if (!(a.frame == b.frame)) throw Error(ErrorCode::FrameMismatch, "wedge of different frames");
  return {a.frame, a.coeff * b.coeff.transpose() - b.coeff * a.coeff.transpose()};
}

ThreeTensor::ThreeTensor(const Frame& f)
    : frame(f), data(static_cast<std::size_t>(f.size()) * f.size() * f.size(), cplx{}) {}

cplx& ThreeTensor::at(int mu, int nu, int rho) {
  const std::size_t s = static_cast<std::size_t>(frame.size());
  return data[(mu * s + nu) * s + rho];
}

cplx ThreeTensor::at(int mu, int nu, int rho) const {
  const std::size_t s = static_cast<std::size_t>(frame.size());
  return data[(mu * s + nu) * s + rho];
}

double ThreeTensor::max_abs() const {
  double best = 0.0;
  for (const cplx& c : data) best = std::max(best, std::abs(c));
  return best;
}

double VectorFieldValue::reality_defect() const {
  double worst = 0.0;
  for (int j = 0; j < frame.coords(); ++j) {
    worst = std::max(worst,
                     std::abs(comp[frame.conj_slot(j)] - std::conj(comp[frame.holo_slot(j)])));
  }
  return worst;
}

ComplexMat fd_wirtinger_jacobian(const SmoothMap& f, const ComplexVec& p, double h) {
  if (p.size() != f.domain.coords()) throw Error(ErrorCode::FrameMismatch, "point vs domain");
  checked_eval(f, p);
  const auto parts = wirtinger_partials([&](const ComplexVec& z) { return checked_eval(f, z); },
                                        p, h);
  const Frame& in = f.domain;
  const Frame& out = f.codomain;
  ComplexMat jac = ComplexMat::Zero(out.size(), in.size());
  for (int j = 0; j < in.coords(); ++j) {
    const auto& [dz, dzbar] = parts[static_cast<std::size_t>(j)];
    for (int i = 0; i < out.coords(); ++i) {
      jac(out.holo_slot(i), in.holo_slot(j)) = dz[i];
      jac(out.holo_slot(i), in.conj_slot(j)) = dzbar[i];
      jac(out.conj_slot(i), in.holo_slot(j)) = std::conj(dzbar[i]);
      jac(out.conj_slot(i), in.conj_slot(j)) = std::conj(dz[i]);
    }
  }
  return jac;
}

ComplexMat wirtinger_jacobian(const SmoothMap& f, const ComplexVec& p, double h) {
  if (!(h >= kMinStep)) throw Error(ErrorCode::StepTooSmall, "step below 1e-12");
  if (f.has_analytic_jacobian()) {
    if (p.size() != f.domain.coords()) throw Error(ErrorCode::FrameMismatch, "point vs domain");
    checked_eval(f, p);
    return f.jacobian(p);
  }
  return fd_wirtinger_jacobian(f, p, h);
}

TwoForm pullback(const ComplexMat& jacobian, const TwoForm& omega, const Frame& domain) {
  if (jacobian.rows() != omega.frame.size() || jacobian.cols() != domain.size()) {
    throw Error(ErrorCode::FrameMismatch, "Jacobian shape does not match frames");
  }
  TwoForm out{domain, jacobian.transpose() * omega.coeff * jacobian};
  // Restore exact antisymmetry lost to rounding.
  out.coeff = 0.5 * (out.coeff - out.coeff.transpose()).eval();
  return out;
}

TwoForm pullback_two_form(const SmoothMap& f, const TwoFormField& omega_at, const ComplexVec& p,
                          double h) {
  const ComplexMat jac = wirtinger_jacobian(f, p, h);
  const TwoForm target = omega_at(checked_eval(f, p));
  if (!(target.frame == f.codomain)) throw Error(ErrorCode::FrameMismatch, "form vs codomain");
  return pullback(jac, target, f.domain);
}

ThreeTensor exterior_derivative(const TwoFormField& omega_at, const ComplexVec& p, double h) {
  const Frame frame = omega_at(p).frame;
  if (p.size() != frame.coords()) throw Error(ErrorCode::FrameMismatch, "point vs frame");
  const auto parts =
      wirtinger_partials([&](const ComplexVec& z) { return ComplexMat(omega_at(z).coeff); }, p, h);

  const int size = frame.size();
  std::vector<ComplexMat> partial(static_cast<std::size_t>(size));
  for (int j = 0; j < frame.coords(); ++j) {
    partial[static_cast<std::size_t>(frame.holo_slot(j))] = parts[static_cast<std::size_t>(j)].dz;
    partial[static_cast<std::size_t>(frame.conj_slot(j))] =
        parts[static_cast<std::size_t>(j)].dzbar;
  }

  ThreeTensor d(frame);
  for (int mu = 0; mu < size; ++mu) {
    for (int nu = mu + 1; nu < size; ++nu) {
      for (int rho = nu + 1; rho < size; ++rho) {
        const cplx t = partial[mu](nu, rho) + partial[nu](rho, mu) + partial[rho](mu, nu);
        d.at(mu, nu, rho) = t;
        d.at(nu, rho, mu) = t;
        d.at(rho, mu, nu) = t;
        d.at(nu, mu, rho) = -t;
        d.at(mu, rho, nu) = -t;
        d.at(rho, nu, mu) = -t;
      }
    }
  }
  return d;
}

TwoForm exterior_derivative(const OneFormField& alpha_at, const ComplexVec& p, double h) {
  const Frame frame = alpha_at(p).frame;
  if (p.size() != frame.coords()) throw Error(ErrorCode::FrameMismatch, "point vs frame");
  const auto parts =
      wirtinger_partials([&](const ComplexVec& z) { return ComplexVec(alpha_at(z).coeff); }, p, h);
  ComplexMat grad(frame.size(), frame.size());  // grad(mu, nu) = d_mu a_nu
  for (int j = 0; j < frame.coords(); ++j) {
    grad.row(frame.holo_slot(j)) = parts[static_cast<std::size_t>(j)].dz.transpose();
    grad.row(frame.conj_slot(j)) = parts[static_cast<std::size_t>(j)].dzbar.transpose();
  }
  return {frame, grad - grad.transpose()};
}

OneForm interior_product(const VectorFieldValue& x, const TwoForm& omega) {
  if (!(x.frame == omega.frame)) throw Error(ErrorCode::FrameMismatch, "field vs form frame");
  return {omega.frame, omega.coeff.transpose() * x.comp};
}

cplx interior_product(const VectorFieldValue& x, const OneForm& alpha) {
  if (!(x.frame == alpha.frame)) throw Error(ErrorCode::FrameMismatch, "field vs form frame");
  return alpha.apply(x.comp);
}

OneForm differential(const ScalarField& fn, const Frame& frame, const ComplexVec& p, double h) {
  if (p.size() != frame.coords()) throw Error(ErrorCode::FrameMismatch, "point vs frame");
  const auto parts = wirtinger_partials(
      [&](const ComplexVec& z) {
        ComplexVec one(1);
        one[0] = fn(z);
        return one;
      },
      p, h);
  OneForm out = OneForm::zero(frame);
  for (int j = 0; j < frame.coords(); ++j) {
    out.coeff[frame.holo_slot(j)] = parts[static_cast<std::size_t>(j)].dz[0];
    out.coeff[frame.conj_slot(j)] = parts[static_cast<std::size_t>(j)].dzbar[0];
  }
  return out;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (!(outer.domain == inner.codomain)) throw Error(ErrorCode::FrameMismatch, "compose frames");
  SmoothMap out{inner.domain, outer.codomain,
                [outer, inner](const ComplexVec& z) { return outer.eval(inner.eval(z)); }, {}};
  if (outer.has_analytic_jacobian() && inner.has_analytic_jacobian()) {
    out.jacobian = [outer, inner](const ComplexVec& z) -> ComplexMat {
      return outer.jacobian(inner.eval(z)) * inner.jacobian(z);
    };
  }
  return out;
}

SmoothMap linear_map(const Frame& domain, const Frame& codomain, const ComplexMat& a) {
  if (a.rows() != codomain.coords() || a.cols() != domain.coords()) {
    throw Error(ErrorCode::FrameMismatch, "matrix shape vs frames");
  }
  ComplexMat jac = ComplexMat::Zero(codomain.size(), domain.size());
  for (int i = 0; i < codomain.coords(); ++i) {
    for (int j = 0; j < domain.coords(); ++j) {
      jac(codomain.holo_slot(i), domain.holo_slot(j)) = a(i, j);
      jac(codomain.conj_slot(i), domain.conj_slot(j)) = std::conj(a(i, j));
    }
  }
  return {domain, codomain, [a](const ComplexVec& z) -> ComplexVec { return a * z; },
          [jac](const ComplexVec&) { return jac; }};
}

}  // namespace wproj
