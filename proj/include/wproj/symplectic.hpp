#pragma once

// Hamiltonian reduction of (V0 x W0, omega0) by the circle action
// (v, w) -> (e^{it} v, e^{-it} w), and the resulting 2-form on the weighted
// projective space, both as a closed-form expression in homogeneous
// coordinates and as a numerical pullback along the level-set retraction.

#include "wproj/forms.hpp"
#include "wproj/hvec.hpp"

namespace wproj {

/// omega0 = (i/2)(dv dvbar + alpha dw dwbar); level set H = beta.
struct LevelSpec {
  double alpha = 1.0;
  double beta = 0.0;
};

struct ReductionContext {
  Frame frame;
  LevelSpec spec;

  static ReductionContext for_point(const HomPoint& p, LevelSpec spec = {}) {
    return {Frame{p.n(), p.m()}, spec};
  }
};

TwoForm omega0(const ReductionContext& ctx);

/// H = (|v|^2 - alpha |w|^2) / 2.
double hamiltonian(const ReductionContext& ctx, const HomPoint& p);

/// H as a scalar field over stacked coordinates (for numerical differentials).
ScalarField hamiltonian_field(const ReductionContext& ctx);

/// Exact dH = (1/2)(vbar dv + v dvbar - alpha wbar dw - alpha w dwbar).
OneForm hamiltonian_differential(const ReductionContext& ctx, const HomPoint& p);

/// Generator of (v, w) -> (e^{it} v, e^{-it} w): components (iv, -i vbar, -iw, i wbar).
VectorFieldValue circle_generator(const HomPoint& p);

/// Generator of (v, w) -> (r v, w / r), r > 0: components (v, vbar, -w, -wbar).
VectorFieldValue radial_generator(const HomPoint& p);

HomPoint circle_flow(const HomPoint& p, double t);

/// (v, w) -> (e^{it} v, e^{-it} w) as a map with exact Jacobian.
SmoothMap phase_action(const Frame& frame, double t);

/// (v, w) -> (lambda v, w / lambda) as a map with exact Jacobian.
SmoothMap scaling_action(const Frame& frame, cplx lambda);

/// The positive real lambda with H(act(lambda, p)) = beta, i.e. the square
/// root of the positive root of |v|^2 x^2 - 2 beta x - alpha |w|^2 = 0.
/// Throws NoRealRoot when no positive root exists (always the case for a
/// negative discriminant, which needs alpha < 0).
double normalize_to_level(const ReductionContext& ctx, const HomPoint& p);

/// p -> act(normalize_to_level(ctx, p), p).
HomPoint retract(const ReductionContext& ctx, const HomPoint& p);

/// The retraction onto the level set as a SmoothMap, with its exact Jacobian
/// attached. Requires alpha > 0.
SmoothMap retraction(const ReductionContext& ctx);

/// Closed-form reduced 2-form at alpha = 1, beta = 0 in homogeneous
/// coordinates, with V = |v|^2, W = |w|^2:
///   (i/2) V^{-3/2} W^{-3/2} [ V W^2 dv^dvbar + V^2 W dw^dwbar
///     - W^2/2 (vbar.dv)^(v.dvbar) - V^2/2 (wbar.dw)^(w.dwbar)
///     + VW/2 (wbar.dw)^(v.dvbar) + VW/2 (vbar.dv)^(w.dwbar) ].
TwoForm omega_formula(const HomPoint& p);

/// Finite-difference pullback of omega0 along the retraction; the
/// independent reference for omega_formula (and the only route for beta != 0).
TwoForm omega_oracle(const HomPoint& p, double h = kDefaultStep, LevelSpec spec = {});

/// Chart frame: u-block first, fiber-block second.
Frame chart_frame(const ChartId& chart, int n, int m);

/// Chart coordinates -> homogeneous coordinates, exact (constant) Jacobian.
SmoothMap chart_embedding(const ChartId& chart, int n, int m);

/// Transition between two charts as a map of stacked chart coordinates.
SmoothMap chart_transition_map(const ChartId& from, const ChartId& to, int n, int m);

/// omega_formula restricted to a chart (pivot coordinate fixed to 1).
TwoForm omega_in_chart(const ChartCoords& c);

}  // namespace wproj
