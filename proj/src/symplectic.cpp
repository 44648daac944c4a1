#include "wproj/symplectic.hpp"

#include <cmath>

#include "wproj/error.hpp"

namespace wproj {

namespace {

constexpr cplx kI(0.0, 1.0);

struct LevelRoot {
  double t;     // |lambda|^2
  double disc;  // sqrt of the discriminant
};

// Positive root t = |lambda|^2 of V t^2 - 2 beta t - alpha W = 0, which is
// H(act(lambda, p)) = beta written out.
LevelRoot positive_root(const LevelSpec& spec, double vv, double ww) {
  const double beta = spec.beta;
  const double disc = beta * beta + spec.alpha * vv * ww;
  if (disc < 0.0) throw Error(ErrorCode::NoRealRoot, "negative discriminant");
  const double d = std::sqrt(disc);
  // Cancellation-free expression for the larger root.
  const double t = beta >= 0.0 ? (beta + d) / vv : spec.alpha * ww / (d - beta);
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NoRealRoot, "no positive root");
  return {t, d};
}

void require_positive_alpha(const LevelSpec& spec) {
  if (!(spec.alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "level retraction requires alpha > 0");
  }
}

// Jacobian of (v, w) -> (lambda v, w / lambda) with lambda = sqrt(t(V, W)).
ComplexMat retraction_jacobian(const Frame& frame, const LevelSpec& spec, const HomPoint& p) {
  const double vv = p.v().squaredNorm();
  const double ww = p.w().squaredNorm();
  const auto [t, d] = positive_root(spec, vv, ww);
  const double lambda = std::sqrt(t);
  // Implicit differentiation of V t^2 - 2 beta t - alpha W = 0.
  const double dl_dv = (-t * t / (2.0 * d)) / (2.0 * lambda);
  const double dl_dw = (spec.alpha / (2.0 * d)) / (2.0 * lambda);

  ComplexVec grad = ComplexVec::Zero(frame.size());
  for (int a = 0; a < frame.n; ++a) {
    grad[frame.v(a)] = dl_dv * std::conj(p.v()[a]);
    grad[frame.vbar(a)] = dl_dv * p.v()[a];
  }
  for (int k = 0; k < frame.m; ++k) {
    grad[frame.w(k)] = dl_dw * std::conj(p.w()[k]);
    grad[frame.wbar(k)] = dl_dw * p.w()[k];
  }

  ComplexMat jac(frame.size(), frame.size());
  for (int a = 0; a < frame.n; ++a) {
    jac.row(frame.v(a)) = p.v()[a] * grad.transpose();
    jac.row(frame.vbar(a)) = std::conj(p.v()[a]) * grad.transpose();
    jac(frame.v(a), frame.v(a)) += lambda;
    jac(frame.vbar(a), frame.vbar(a)) += lambda;
  }
  const double inv2 = 1.0 / (lambda * lambda);
  for (int k = 0; k < frame.m; ++k) {
    jac.row(frame.w(k)) = -inv2 * p.w()[k] * grad.transpose();
    jac.row(frame.wbar(k)) = -inv2 * std::conj(p.w()[k]) * grad.transpose();
    jac(frame.w(k), frame.w(k)) += 1.0 / lambda;
    jac(frame.wbar(k), frame.wbar(k)) += 1.0 / lambda;
  }
  return jac;
}

ComplexMat block_diagonal(const Frame& frame, cplx on_v, cplx on_w) {
  ComplexMat a = ComplexMat::Zero(frame.coords(), frame.coords());
  for (int j = 0; j < frame.n; ++j) a(j, j) = on_v;
  for (int j = frame.n; j < frame.coords(); ++j) a(j, j) = on_w;
  return a;
}

// Holomorphic chart coordinate j -> stacked homogeneous coordinate.
int chart_to_homogeneous(const ChartId& chart, int n, int m, int j) {
  const int u_dim = (chart.atlas == Atlas::V ? n : m) - 1;
  if (chart.atlas == Atlas::V) {
    if (j < u_dim) return j < chart.index ? j : j + 1;
    return n + (j - u_dim);
  }
  if (j < u_dim) return n + (j < chart.index ? j : j + 1);
  return j - u_dim;
}

}  // namespace

TwoForm omega0(const ReductionContext& ctx) {
  const Frame& f = ctx.frame;
  TwoForm out = TwoForm::zero(f);
  for (int a = 0; a < f.n; ++a) out.set(f.v(a), f.vbar(a), 0.5 * kI);
  for (int k = 0; k < f.m; ++k) out.set(f.w(k), f.wbar(k), 0.5 * kI * ctx.spec.alpha);
  return out;
}

double hamiltonian(const ReductionContext& ctx, const HomPoint& p) {
  return 0.5 * (p.v().squaredNorm() - ctx.spec.alpha * p.w().squaredNorm());
}

ScalarField hamiltonian_field(const ReductionContext& ctx) {
  return [ctx](const ComplexVec& z) -> cplx {
    const int n = ctx.frame.n;
    // Written with z and conj(z) separately so Wirtinger partials see both.
    cplx acc = 0.0;
    for (int j = 0; j < z.size(); ++j) {
      const cplx term = z[j] * std::conj(z[j]);
      acc += j < n ? term : -ctx.spec.alpha * term;
    }
    return 0.5 * acc;
  };
}

OneForm hamiltonian_differential(const ReductionContext& ctx, const HomPoint& p) {
  const Frame& f = ctx.frame;
  OneForm dh = OneForm::zero(f);
  for (int a = 0; a < f.n; ++a) {
    dh.coeff[f.v(a)] = 0.5 * std::conj(p.v()[a]);
    dh.coeff[f.vbar(a)] = 0.5 * p.v()[a];
  }
  for (int k = 0; k < f.m; ++k) {
    dh.coeff[f.w(k)] = -0.5 * ctx.spec.alpha * std::conj(p.w()[k]);
    dh.coeff[f.wbar(k)] = -0.5 * ctx.spec.alpha * p.w()[k];
  }
  return dh;
}

VectorFieldValue circle_generator(const HomPoint& p) {
  ComplexVec holo(p.n() + p.m());
  holo << kI * p.v(), -kI * p.w();
  const Frame f{p.n(), p.m()};
  return {f, real_tangent(f, holo)};
}

VectorFieldValue radial_generator(const HomPoint& p) {
  ComplexVec holo(p.n() + p.m());
  holo << p.v(), -p.w();
  const Frame f{p.n(), p.m()};
  return {f, real_tangent(f, holo)};
}

HomPoint circle_flow(const HomPoint& p, double t) { return act(std::exp(kI * t), p); }

SmoothMap phase_action(const Frame& frame, double t) {
  return linear_map(frame, frame, block_diagonal(frame, std::exp(kI * t), std::exp(-kI * t)));
}

SmoothMap scaling_action(const Frame& frame, cplx lambda) {
  if (std::abs(lambda) <= kEps) throw Error(ErrorCode::ZeroScalar, "|lambda| <= eps");
  return linear_map(frame, frame, block_diagonal(frame, lambda, 1.0 / lambda));
}

double normalize_to_level(const ReductionContext& ctx, const HomPoint& p) {
  return std::sqrt(positive_root(ctx.spec, p.v().squaredNorm(), p.w().squaredNorm()).t);
}

HomPoint retract(const ReductionContext& ctx, const HomPoint& p) {
  return act(normalize_to_level(ctx, p), p);
}

SmoothMap retraction(const ReductionContext& ctx) {
  require_positive_alpha(ctx.spec);
  const Frame f = ctx.frame;
  return {f, f,
          [ctx](const ComplexVec& z) { return retract(ctx, HomPoint::from_stacked(z, ctx.frame.n)).stacked(); },
          [ctx](const ComplexVec& z) {
            return retraction_jacobian(ctx.frame, ctx.spec, HomPoint::from_stacked(z, ctx.frame.n));
          }};
}

TwoForm omega_formula(const HomPoint& p) {
  const Frame f{p.n(), p.m()};
  const double vv = p.v().squaredNorm();
  const double ww = p.w().squaredNorm();

  OneForm dv_vbar = OneForm::zero(f);  // sum vbar^a dv^a
  OneForm v_dvbar = OneForm::zero(f);  // sum v^a dvbar^a
  OneForm dw_wbar = OneForm::zero(f);
  OneForm w_dwbar = OneForm::zero(f);
  TwoForm dv_dvbar = TwoForm::zero(f);
  TwoForm dw_dwbar = TwoForm::zero(f);
  for (int a = 0; a < f.n; ++a) {
    dv_vbar.coeff[f.v(a)] = std::conj(p.v()[a]);
    v_dvbar.coeff[f.vbar(a)] = p.v()[a];
    dv_dvbar.set(f.v(a), f.vbar(a), 1.0);
  }
  for (int k = 0; k < f.m; ++k) {
    dw_wbar.coeff[f.w(k)] = std::conj(p.w()[k]);
    w_dwbar.coeff[f.wbar(k)] = p.w()[k];
    dw_dwbar.set(f.w(k), f.wbar(k), 1.0);
  }

  const ComplexMat bracket = vv * ww * ww * dv_dvbar.coeff + vv * vv * ww * dw_dwbar.coeff -
                             0.5 * ww * ww * wedge(dv_vbar, v_dvbar).coeff -
                             0.5 * vv * vv * wedge(dw_wbar, w_dwbar).coeff +
                             0.5 * vv * ww * wedge(dw_wbar, v_dvbar).coeff +
                             0.5 * vv * ww * wedge(dv_vbar, w_dwbar).coeff;
  const cplx prefactor = 0.5 * kI * std::pow(vv, -1.5) * std::pow(ww, -1.5);
  return {f, prefactor * bracket};
}

TwoForm omega_oracle(const HomPoint& p, double h, LevelSpec spec) {
  const ReductionContext ctx = ReductionContext::for_point(p, spec);
  const ComplexMat jac = fd_wirtinger_jacobian(retraction(ctx), p.stacked(), h);
  return pullback(jac, omega0(ctx), ctx.frame);
}

Frame chart_frame(const ChartId& chart, int n, int m) {
  validate_chart(chart, n, m);
  return chart.atlas == Atlas::V ? Frame{n - 1, m} : Frame{m - 1, n};
}

SmoothMap chart_embedding(const ChartId& chart, int n, int m) {
  const Frame local = chart_frame(chart, n, m);
  const Frame global{n, m};
  ComplexMat jac = ComplexMat::Zero(global.size(), local.size());
  for (int j = 0; j < local.coords(); ++j) {
    const int h = chart_to_homogeneous(chart, n, m, j);
    jac(global.holo_slot(h), local.holo_slot(j)) = 1.0;
    jac(global.conj_slot(h), local.conj_slot(j)) = 1.0;
  }
  return {local, global,
          [chart, u_dim = local.n](const ComplexVec& z) {
            return from_chart(chart_from_stacked(chart, z, u_dim)).stacked();
          },
          [jac](const ComplexVec&) { return jac; }};
}

SmoothMap chart_transition_map(const ChartId& from, const ChartId& to, int n, int m) {
  const Frame source = chart_frame(from, n, m);
  const Frame target = chart_frame(to, n, m);
  return {source, target,
          [from, to, u_dim = source.n](const ComplexVec& z) {
            return transition(chart_from_stacked(from, z, u_dim), to).stacked();
          },
          {}};
}

TwoForm omega_in_chart(const ChartCoords& c) {
  const HomPoint p = from_chart(c);
  const SmoothMap embed = chart_embedding(c.chart, p.n(), p.m());
  return pullback(embed.jacobian(c.stacked()), omega_formula(p), embed.domain);
}

}  // namespace wproj
