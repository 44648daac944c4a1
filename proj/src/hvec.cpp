#include "wproj/hvec.hpp"

#include <algorithm>
#include <string>

#include "wproj/error.hpp"

namespace wproj {

namespace {

ComplexVec delete_slot(const ComplexVec& x, int slot) {
  ComplexVec out(x.size() - 1);
  for (Eigen::Index i = 0, j = 0; i < x.size(); ++i) {
    if (i != slot) out[j++] = x[i];
  }
  return out;
}

ComplexVec insert_one(const ComplexVec& x, int slot) {
  ComplexVec out(x.size() + 1);
  for (Eigen::Index i = 0, j = 0; i < out.size(); ++i) {
    out[i] = (i == slot) ? cplx(1.0, 0.0) : x[j++];
  }
  return out;
}

}  // namespace

double max_modulus(const ComplexVec& x) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) best = std::max(best, std::abs(x[i]));
  return best;
}

HomPoint::HomPoint(ComplexVec v, ComplexVec w) : v_(std::move(v)), w_(std::move(w)) {
  if (v_.size() < 1 || w_.size() < 1) {
    throw Error(ErrorCode::DimMismatch, "both factors need dimension >= 1");
  }
  if (max_modulus(v_) <= kEps) throw Error(ErrorCode::ZeroVector, "v is zero");
  if (max_modulus(w_) <= kEps) throw Error(ErrorCode::ZeroVector, "w is zero");
}

ComplexVec HomPoint::stacked() const {
  ComplexVec z(v_.size() + w_.size());
  z << v_, w_;
  return z;
}

HomPoint HomPoint::from_stacked(const ComplexVec& z, int n) {
  return HomPoint(z.head(n), z.tail(z.size() - n));
}

HomPoint act(cplx lambda, const HomPoint& p) {
  if (std::abs(lambda) <= kEps) throw Error(ErrorCode::ZeroScalar, "|lambda| <= eps");
  return HomPoint(lambda * p.v(), p.w() / lambda);
}

ComplexMat canonical_matrix(const HomPoint& p) { return p.v() * p.w().transpose(); }

double orbit_distance(const HomPoint& p, const HomPoint& q) {
  if (p.n() != q.n() || p.m() != q.m()) {
    throw Error(ErrorCode::DimMismatch, "points live in different spaces");
  }
  const ComplexMat mp = canonical_matrix(p);
  const ComplexMat mq = canonical_matrix(q);
  return (mp - mq).norm() / std::max(mp.norm(), mq.norm());
}

bool equivalent(const HomPoint& p, const HomPoint& q, double rtol) {
  return orbit_distance(p, q) <= rtol;
}

ComplexVec ChartCoords::stacked() const {
  ComplexVec z(u.size() + fiber.size());
  z << u, fiber;
  return z;
}

void validate_chart(const ChartId& chart, int n, int m) {
  const int limit = chart.atlas == Atlas::V ? n : m;
  if (chart.index < 0 || chart.index >= limit) {
    throw Error(ErrorCode::InvalidArgument,
                "chart index " + std::to_string(chart.index) + " out of range");
  }
}

ChartCoords to_chart(const HomPoint& p, const ChartId& chart) {
  validate_chart(chart, p.n(), p.m());
  if (chart.atlas == Atlas::V) {
    const cplx pivot = p.v()[chart.index];
    if (std::abs(pivot) <= kEps) throw Error(ErrorCode::PivotTooSmall, "v pivot vanishes");
    return {chart, delete_slot(p.v() / pivot, chart.index), pivot * p.w()};
  }
  const cplx pivot = p.w()[chart.index];
  if (std::abs(pivot) <= kEps) throw Error(ErrorCode::PivotTooSmall, "w pivot vanishes");
  return {chart, delete_slot(p.w() / pivot, chart.index), pivot * p.v()};
}

HomPoint from_chart(const ChartCoords& c) {
  if (c.chart.index < 0 || c.chart.index > c.u.size()) {
    throw Error(ErrorCode::InvalidArgument, "chart index does not fit u");
  }
  if (max_modulus(c.fiber) <= kEps) throw Error(ErrorCode::ZeroVector, "fiber is zero");
  ComplexVec full = insert_one(c.u, c.chart.index);
  if (c.chart.atlas == Atlas::V) return HomPoint(std::move(full), c.fiber);
  return HomPoint(c.fiber, std::move(full));
}

ChartCoords transition(const ChartCoords& c, const ChartId& target) {
  if (target == c.chart) return c;
  return to_chart(from_chart(c), target);
}

ChartCoords chart_from_stacked(const ChartId& chart, const ComplexVec& z, int u_dim) {
  return {chart, z.head(u_dim), z.tail(z.size() - u_dim)};
}

ChartId best_chart(const HomPoint& p) {
  int best = 0;
  for (int a = 1; a < p.n(); ++a) {
    if (std::abs(p.v()[a]) > std::abs(p.v()[best])) best = a;
  }
  return {Atlas::V, best};
}

}  // namespace wproj
