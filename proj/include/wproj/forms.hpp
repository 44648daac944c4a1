#pragma once

// Numerical exterior calculus over the complex frame
//   (dv^1..dv^n, dvbar^1..dvbar^n, dw^1..dw^m, dwbar^1..dwbar^m)
// using Wirtinger derivatives d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.
//
// Points are passed as stacked holomorphic coordinates (v, w) of length n + m;
// the conjugate coordinates are implied, so every map below respects the
// reality structure by construction.
//
// A 2-form is stored as an antisymmetric matrix c with
//   omega = sum_{mu<nu} c[mu][nu] e^mu ^ e^nu,   omega(xi, eta) = xi^T c eta.

#include <functional>
#include <string>
#include <vector>

#include "wproj/hvec.hpp"

namespace wproj {

inline constexpr double kDefaultStep = 1e-5;
inline constexpr double kSecondDerivativeStep = 1e-4;
inline constexpr double kMinStep = 1e-12;

struct Frame {
  int n = 0;
  int m = 0;

  int size() const noexcept { return 2 * (n + m); }
  int coords() const noexcept { return n + m; }

  int v(int a) const noexcept { return a; }
  int vbar(int a) const noexcept { return n + a; }
  int w(int k) const noexcept { return 2 * n + k; }
  int wbar(int k) const noexcept { return 2 * n + m + k; }

  /// Slot of the j-th stacked holomorphic coordinate and of its conjugate.
  int holo_slot(int j) const noexcept { return j < n ? v(j) : w(j - n); }
  int conj_slot(int j) const noexcept { return j < n ? vbar(j) : wbar(j - n); }

  /// The conjugation involution on slots.
  int conjugate(int slot) const noexcept;

  std::string label(int slot) const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Expand holomorphic components z into a full frame vector (z, conj z)
/// laid out as (v, vbar, w, wbar).
ComplexVec real_tangent(const Frame& frame, const ComplexVec& holo);

struct OneForm {
  Frame frame;
  ComplexVec coeff;

  static OneForm zero(const Frame& frame);
  cplx apply(const ComplexVec& xi) const { return coeff.transpose() * xi; }
};

struct TwoForm {
  Frame frame;
  ComplexMat coeff;

  static TwoForm zero(const Frame& frame);

  /// Sets c[mu][nu] = value and c[nu][mu] = -value.
  void set(int mu, int nu, cplx value);
  cplx operator()(int mu, int nu) const { return coeff(mu, nu); }
  cplx evaluate(const ComplexVec& xi, const ComplexVec& eta) const;
  double antisymmetry_defect() const;
  double max_abs() const;
};

TwoForm wedge(const OneForm& a, const OneForm& b);

/// Fully antisymmetric rank-3 coefficients: d omega = sum_{mu<nu<rho} T e^mu^e^nu^e^rho.
struct ThreeTensor {
  Frame frame;
  std::vector<cplx> data;

  explicit ThreeTensor(const Frame& f);
  cplx& at(int mu, int nu, int rho);
  cplx at(int mu, int nu, int rho) const;
  double max_abs() const;
};

struct VectorFieldValue {
  Frame frame;
  ComplexVec comp;

  /// Sup norm of (conjugate block - conj(holomorphic block)).
  double reality_defect() const;
};

/// A map between coordinate domains, holomorphic coordinates in and out.
/// When `jacobian` is set it must return the exact Wirtinger Jacobian.
struct SmoothMap {
  Frame domain;
  Frame codomain;
  std::function<ComplexVec(const ComplexVec&)> eval;
  std::function<ComplexMat(const ComplexVec&)> jacobian;

  bool has_analytic_jacobian() const noexcept { return static_cast<bool>(jacobian); }
  ComplexVec operator()(const ComplexVec& z) const { return eval(z); }
};

using ScalarField = std::function<cplx(const ComplexVec&)>;
using OneFormField = std::function<OneForm(const ComplexVec&)>;
using TwoFormField = std::function<TwoForm(const ComplexVec&)>;

/// J[mu][nu] = d f^mu / d z^nu in the codomain x domain frames. Uses the
/// analytic Jacobian when the map provides one, central differences otherwise.
ComplexMat wirtinger_jacobian(const SmoothMap& f, const ComplexVec& p, double h = kDefaultStep);

/// Always central differences, even if an analytic Jacobian exists.
ComplexMat fd_wirtinger_jacobian(const SmoothMap& f, const ComplexVec& p, double h = kDefaultStep);

/// J^T omega J.
TwoForm pullback(const ComplexMat& jacobian, const TwoForm& omega, const Frame& domain);

TwoForm pullback_two_form(const SmoothMap& f, const TwoFormField& omega_at, const ComplexVec& p,
                          double h = kDefaultStep);

ThreeTensor exterior_derivative(const TwoFormField& omega_at, const ComplexVec& p,
                                double h = kSecondDerivativeStep);

/// d of a 1-form field; used for d^2 = 0 checks.
TwoForm exterior_derivative(const OneFormField& alpha_at, const ComplexVec& p,
                            double h = kSecondDerivativeStep);

OneForm interior_product(const VectorFieldValue& x, const TwoForm& omega);
cplx interior_product(const VectorFieldValue& x, const OneForm& alpha);

/// Wirtinger differential of a scalar function.
OneForm differential(const ScalarField& fn, const Frame& frame, const ComplexVec& p,
                     double h = kDefaultStep);

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

/// The holomorphic linear map z -> A z, with exact Jacobian.
SmoothMap linear_map(const Frame& domain, const Frame& codomain, const ComplexMat& a);

}  // namespace wproj
