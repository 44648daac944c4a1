#pragma once

// Homogeneous points [v||w] of the weighted projective space with weights
// +1/-1, i.e. orbits of (v, w) -> (lambda v, lambda^{-1} w) on V0 x W0, and
// the two canonical chart atlases lifted from P(V) and P(W).

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace wproj {

using cplx = std::complex<double>;
using ComplexVec = Eigen::VectorXcd;
using ComplexMat = Eigen::MatrixXcd;

/// Nonzero threshold for vectors, scalars and chart pivots.
inline constexpr double kEps = 1e-12;

double max_modulus(const ComplexVec& x);

/// Homogeneous coordinates (v, w) with both factors nonzero.
class HomPoint {
 public:
  /// Throws ZeroVector when either factor has sup-norm <= kEps.
  HomPoint(ComplexVec v, ComplexVec w);

  const ComplexVec& v() const noexcept { return v_; }
  const ComplexVec& w() const noexcept { return w_; }
  int n() const noexcept { return static_cast<int>(v_.size()); }
  int m() const noexcept { return static_cast<int>(w_.size()); }

  /// (v, w) stacked as a single vector of length n + m.
  ComplexVec stacked() const;
  static HomPoint from_stacked(const ComplexVec& z, int n);

 private:
  ComplexVec v_;
  ComplexVec w_;
};

HomPoint act(cplx lambda, const HomPoint& p);

/// v (x) w as an n x m matrix; rank one and nonzero.
ComplexMat canonical_matrix(const HomPoint& p);

/// Orbit equality, decided on canonical matrices with a relative Frobenius
/// tolerance.
bool equivalent(const HomPoint& p, const HomPoint& q, double rtol);

/// Relative Frobenius distance used by `equivalent`.
double orbit_distance(const HomPoint& p, const HomPoint& q);

enum class Atlas { V, W };

struct ChartId {
  Atlas atlas = Atlas::V;
  int index = 0;

  friend bool operator==(const ChartId&, const ChartId&) = default;
};

/// Inhomogeneous coordinates. For a V-chart with pivot a0: u holds v^a / v^{a0}
/// for a != a0 and fiber holds v^{a0} w. W-charts swap the roles.
struct ChartCoords {
  ChartId chart;
  ComplexVec u;
  ComplexVec fiber;

  /// Slot count of the chart frame: u followed by fiber.
  int dim() const noexcept { return static_cast<int>(u.size() + fiber.size()); }
  ComplexVec stacked() const;
};

/// Throws DimMismatch/InvalidArgument if `chart` does not fit dims (n, m).
void validate_chart(const ChartId& chart, int n, int m);

ChartCoords to_chart(const HomPoint& p, const ChartId& chart);
HomPoint from_chart(const ChartCoords& c);
ChartCoords transition(const ChartCoords& c, const ChartId& target);

/// Rebuild chart coordinates from a stacked (u, fiber) vector.
ChartCoords chart_from_stacked(const ChartId& chart, const ComplexVec& z, int u_dim);

/// V-chart with the largest |v^a|, lowest index on ties.
ChartId best_chart(const HomPoint& p);

}  // namespace wproj
