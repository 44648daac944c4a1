#include "wproj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "wproj/bundle.hpp"
#include "wproj/error.hpp"
#include "wproj/symplectic.hpp"

namespace wproj {

namespace {

using Rng = std::mt19937_64;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CheckDef {
  std::string name;
  double tol;
  std::function<Json(Rng&, const CheckConfig&)> sample;
  std::function<double(const Json&, const CheckConfig&)> evaluate;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng trial_rng(std::uint64_t seed, const std::string& name, int trial) {
  const std::uint64_t key =
      splitmix64(splitmix64(seed) ^ fnv1a(name)) ^ splitmix64(static_cast<std::uint64_t>(trial));
  return Rng(splitmix64(key));
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(Rng& rng, int count) { return std::uniform_int_distribution<int>(0, count - 1)(rng); }

// Real and imaginary parts uniform in [-2, -0.1] U [0.1, 2].
double component(Rng& rng) {
  const double mag = uniform(rng, 0.1, 2.0);
  return pick(rng, 2) == 0 ? -mag : mag;
}

ComplexVec random_vec(Rng& rng, int dim) {
  ComplexVec x(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = component(rng);
    x[i] = cplx(re, component(rng));
  }
  return x;
}

HomPoint random_point(Rng& rng, int n, int m) {
  ComplexVec v = random_vec(rng, n);
  return HomPoint(std::move(v), random_vec(rng, m));
}

Json sample_point(Rng& rng, const CheckConfig& cfg) {
  if (cfg.pinned) return to_json(*cfg.pinned);
  return to_json(random_point(rng, cfg.n, cfg.m));
}

ChartId random_chart(Rng& rng, int n, int m) {
  const bool v_atlas = pick(rng, 2) == 0;
  return {v_atlas ? Atlas::V : Atlas::W, pick(rng, v_atlas ? n : m)};
}

cplx random_lambda(Rng& rng) {
  const double r = std::exp(uniform(rng, std::log(0.5), std::log(2.0)));
  return std::polar(r, uniform(rng, -std::numbers::pi, std::numbers::pi));
}

double sup(const ComplexVec& x) { return max_modulus(x); }

double sup(const ComplexMat& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

HomPoint point_of(const Json& s) { return point_from_json(s.at("point")); }

// Projects a holomorphic tangent vector onto ker dH at p, where
// dH(xi) = Re<(v, -alpha w), xi> for real tangent vectors.
ComplexVec project_to_level_tangent(const HomPoint& p, double alpha, ComplexVec xi) {
  ComplexVec g(p.n() + p.m());
  g << p.v(), -alpha * p.w();
  const double along = (g.adjoint() * xi)(0).real();
  return xi - (along / g.squaredNorm()) * g;
}

// ---- individual checks -------------------------------------------------

CheckDef moment_map() {
  return {"moment_map", 1e-6,
          [](Rng& rng, const CheckConfig& cfg) {
            static constexpr double kAlphas[] = {1.0, 2.0, -1.0};
            return Json{{"point", sample_point(rng, cfg)}, {"alpha", kAlphas[pick(rng, 3)]}};
          },
          [](const Json& s, const CheckConfig& cfg) {
            const HomPoint p = point_of(s);
            const auto ctx = ReductionContext::for_point(p, {s.at("alpha").get<double>(), 0.0});
            const OneForm contraction = interior_product(circle_generator(p), omega0(ctx));
            const OneForm exact = hamiltonian_differential(ctx, p);
            const OneForm numeric =
                differential(hamiltonian_field(ctx), ctx.frame, p.stacked(), cfg.h);
            return std::max(sup(ComplexVec(contraction.coeff + exact.coeff)),
                            sup(ComplexVec(contraction.coeff + numeric.coeff)));
          }};
}

CheckDef level_section() {
  return {"level_section", 1e-10,
          [](Rng& rng, const CheckConfig& cfg) {
            static constexpr double kBetas[] = {-1.0, 0.0, 1.0};
            const int which = pick(rng, 4);
            const double beta = which < 3 ? kBetas[which] : uniform(rng, -3.0, 3.0);
            return Json{{"point", sample_point(rng, cfg)}, {"beta", beta}};
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            const double beta = s.at("beta").get<double>();
            const auto ctx = ReductionContext::for_point(p, {1.0, beta});
            return std::abs(hamiltonian(ctx, act(normalize_to_level(ctx, p), p)) - beta);
          }};
}

CheckDef proposition_negative_alpha() {
  return {"proposition_negative_alpha", 0.0,
          [](Rng& rng, const CheckConfig& cfg) { return Json{{"point", sample_point(rng, cfg)}}; },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            try {
              normalize_to_level(ReductionContext::for_point(p, {-1.0, 0.0}), p);
            } catch (const Error& e) {
              if (e.code() == ErrorCode::NoRealRoot) return 0.0;
              throw;
            }
            return 1.0;  // a root was found where none may exist
          }};
}

CheckDef retraction_idempotent() {
  return {"retraction_idempotent", 1e-10,
          [](Rng& rng, const CheckConfig& cfg) {
            return Json{{"point", sample_point(rng, cfg)}, {"beta", uniform(rng, -2.0, 2.0)}};
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            const auto ctx = ReductionContext::for_point(p, {1.0, s.at("beta").get<double>()});
            const HomPoint once = retract(ctx, p);
            const HomPoint twice = retract(ctx, once);
            return std::max(sup(ComplexVec(twice.stacked() - once.stacked())),
                            std::abs(hamiltonian(ctx, once) - ctx.spec.beta));
          }};
}

CheckDef s1_invariance_on_level() {
  return {"s1_invariance_on_level", 1e-9,
          [](Rng& rng, const CheckConfig& cfg) {
            Json point = sample_point(rng, cfg);
            const int dim = cfg.n + cfg.m;
            return Json{{"point", point},
                        {"beta", uniform(rng, -1.0, 1.0)},
                        {"t", uniform(rng, -std::numbers::pi, std::numbers::pi)},
                        {"xi", to_json(random_vec(rng, dim))},
                        {"eta", to_json(random_vec(rng, dim))}};
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint raw = point_of(s);
            const auto ctx = ReductionContext::for_point(raw, {1.0, s.at("beta").get<double>()});
            const HomPoint p = retract(ctx, raw);
            const double t = s.at("t").get<double>();
            const ComplexVec xi = project_to_level_tangent(p, 1.0, vector_from_json(s.at("xi")));
            const ComplexVec eta = project_to_level_tangent(p, 1.0, vector_from_json(s.at("eta")));

            const SmoothMap flow = phase_action(ctx.frame, t);
            const ComplexMat push = flow.jacobian(p.stacked());
            const TwoForm w0 = omega0(ctx);
            const ComplexVec xi_r = real_tangent(ctx.frame, xi);
            const ComplexVec eta_r = real_tangent(ctx.frame, eta);
            const ComplexVec xi_t = push * xi_r;
            const ComplexVec eta_t = push * eta_r;

            const HomPoint moved = circle_flow(p, t);
            const OneForm dh = hamiltonian_differential(ctx, moved);
            double err = std::abs(w0.evaluate(xi_t, eta_t) - w0.evaluate(xi_r, eta_r));
            err = std::max(err, std::abs(dh.apply(xi_t)));
            err = std::max(err, std::abs(dh.apply(eta_t)));
            err = std::max(err, std::abs(hamiltonian(ctx, moved) - ctx.spec.beta));
            return err;
          }};
}

CheckDef phase_invariance_global() {
  return {"phase_invariance_global", 1e-12,
          [](Rng& rng, const CheckConfig& cfg) {
            return Json{{"point", sample_point(rng, cfg)},
                        {"t", uniform(rng, -std::numbers::pi, std::numbers::pi)}};
          },
          [](const Json& s, const CheckConfig& cfg) {
            const HomPoint p = point_of(s);
            const auto ctx = ReductionContext::for_point(p);
            const TwoForm w0 = omega0(ctx);
            const TwoForm pulled =
                pullback_two_form(phase_action(ctx.frame, s.at("t").get<double>()),
                                  [&](const ComplexVec&) { return w0; }, p.stacked(), cfg.h);
            return sup(ComplexMat(pulled.coeff - w0.coeff));
          }};
}

CheckDef formula_vs_oracle() {
  return {"formula_vs_oracle", 1e-6,
          [](Rng& rng, const CheckConfig& cfg) { return Json{{"point", sample_point(rng, cfg)}}; },
          [](const Json& s, const CheckConfig& cfg) {
            const HomPoint p = point_of(s);
            const TwoForm formula = omega_formula(p);
            const TwoForm oracle = omega_oracle(p, cfg.h);
            return (formula.coeff - oracle.coeff).norm() / oracle.coeff.norm();
          }};
}

CheckDef basicness() {
  return {"basicness", 1e-7,
          [](Rng& rng, const CheckConfig& cfg) {
            Json point = sample_point(rng, cfg);
            return Json{{"point", point}, {"lambda", to_json(random_lambda(rng))}};
          },
          [](const Json& s, const CheckConfig& cfg) {
            const HomPoint p = point_of(s);
            const cplx lambda = complex_from_json(s.at("lambda"));
            const TwoForm omega = omega_formula(p);
            double err = sup(interior_product(circle_generator(p), omega).coeff);
            err = std::max(err, sup(interior_product(radial_generator(p), omega).coeff));
            const Frame frame{p.n(), p.m()};
            const TwoForm pulled = pullback_two_form(
                scaling_action(frame, lambda),
                [n = p.n()](const ComplexVec& z) { return omega_formula(HomPoint::from_stacked(z, n)); },
                p.stacked(), cfg.h);
            return std::max(err, sup(ComplexMat(pulled.coeff - omega.coeff)));
          }};
}

CheckDef closedness() {
  return {"closedness", 1e-5,
          [](Rng& rng, const CheckConfig& cfg) { return Json{{"point", sample_point(rng, cfg)}}; },
          [](const Json& s, const CheckConfig& cfg) {
            const HomPoint p = point_of(s);
            const ThreeTensor d = exterior_derivative(
                [n = p.n()](const ComplexVec& z) { return omega_formula(HomPoint::from_stacked(z, n)); },
                p.stacked(), 10.0 * cfg.h);
            return d.max_abs();
          }};
}

// Reported error is 1/|det|, so the tolerance 1e10 means |det| >= 1e-10.
CheckDef chart_nondegeneracy() {
  return {"chart_nondegeneracy", 1e10,
          [](Rng& rng, const CheckConfig& cfg) {
            Json point = sample_point(rng, cfg);
            return Json{{"point", point}, {"chart", format_chart_id(random_chart(rng, cfg.n, cfg.m))}};
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            const ChartId chart = chart_id_from_json(s.at("chart"));
            const TwoForm local = omega_in_chart(to_chart(p, chart));
            const double det = std::abs(local.coeff.determinant());
            return det > 0.0 ? 1.0 / det : kInf;
          }};
}

CheckDef chart_consistency() {
  return {"chart_consistency", 1e-6,
          [](Rng& rng, const CheckConfig& cfg) {
            Json point = sample_point(rng, cfg);
            const ChartId from = random_chart(rng, cfg.n, cfg.m);
            const ChartId to = random_chart(rng, cfg.n, cfg.m);
            return Json{{"point", point}, {"from", format_chart_id(from)}, {"to", format_chart_id(to)}};
          },
          [](const Json& s, const CheckConfig& cfg) {
            const HomPoint p = point_of(s);
            const ChartId from = chart_id_from_json(s.at("from"));
            const ChartId to = chart_id_from_json(s.at("to"));
            const ChartCoords c = to_chart(p, from);

            double err = orbit_distance(from_chart(c), p);
            const ChartCoords again = to_chart(from_chart(c), from);
            err = std::max(err, sup(ComplexVec(again.stacked() - c.stacked())));
            const ChartCoords back = transition(transition(c, to), from);
            err = std::max(err, sup(ComplexVec(back.stacked() - c.stacked())));

            const SmoothMap move = chart_transition_map(from, to, p.n(), p.m());
            const int u_dim = chart_frame(to, p.n(), p.m()).n;
            const TwoForm pulled = pullback_two_form(
                move,
                [to, u_dim](const ComplexVec& z) {
                  return omega_in_chart(chart_from_stacked(to, z, u_dim));
                },
                c.stacked(), cfg.h);
            return std::max(err, sup(ComplexMat(pulled.coeff - omega_in_chart(c).coeff)));
          }};
}

CheckDef bundle_roundtrip() {
  return {"bundle_roundtrip", 1e-8,
          [](Rng& rng, const CheckConfig& cfg) {
            Json s{{"point", sample_point(rng, cfg)}, {"rank2", nullptr}};
            if (cfg.n >= 2 && cfg.m >= 2) {
              const ComplexVec a = random_vec(rng, cfg.n);
              const ComplexVec b = random_vec(rng, cfg.m);
              const ComplexVec c = random_vec(rng, cfg.n);
              const ComplexVec d = random_vec(rng, cfg.m);
              s["rank2"] = to_json(ComplexMat(a * b.transpose() + c * d.transpose()));
            }
            return s;
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            const TautVector t = embed_tautological(p);
            double err = orbit_distance(decompose_rank1(t.vec, 1e-9), p);
            if (!s.at("rank2").is_null()) {
              try {
                decompose_rank1(matrix_from_json(s.at("rank2")), 1e-9);
                err = std::max(err, 1.0);
              } catch (const Error& e) {
                if (e.code() != ErrorCode::NotRankOne) throw;
              }
            }
            return err;
          }};
}

CheckDef orbit_equality() {
  return {"orbit_equality", 1e-9,
          [](Rng& rng, const CheckConfig& cfg) {
            Json point = sample_point(rng, cfg);
            Json lambda = to_json(random_lambda(rng));
            return Json{{"point", point},
                        {"lambda", lambda},
                        {"other", to_json(random_point(rng, cfg.n, cfg.m))}};
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            const cplx lambda = complex_from_json(s.at("lambda"));
            double err = orbit_distance(p, act(lambda, p));
            err = std::max(err, orbit_distance(HomPoint(lambda * p.v(), p.w()),
                                               HomPoint(p.v(), lambda * p.w())));
            // Canonical matrices separate distinct orbits.
            if (equivalent(p, point_from_json(s.at("other")), 1e-9)) err = std::max(err, 1.0);
            return err;
          }};
}

// With W one-dimensional, [v||w] <-> w^0 v identifies the space with V0.
CheckDef example_w_is_scalar() {
  return {"example_W_is_scalar", 1e-9,
          [](Rng& rng, const CheckConfig& cfg) {
            Json point = (cfg.pinned && cfg.pinned->m() == 1) ? to_json(*cfg.pinned)
                                                              : to_json(random_point(rng, cfg.n, 1));
            return Json{{"point", point}, {"lambda", to_json(random_lambda(rng))}};
          },
          [](const Json& s, const CheckConfig&) {
            const HomPoint p = point_of(s);
            const cplx lambda = complex_from_json(s.at("lambda"));
            const ComplexVec x = p.w()[0] * p.v();
            const HomPoint q = act(lambda, p);
            const ComplexVec y = q.w()[0] * q.v();
            double err = sup(ComplexVec(canonical_matrix(p).col(0) - x));
            err = std::max(err, sup(ComplexVec(y - x)) / sup(x));
            err = std::max(err, orbit_distance(HomPoint(x, ComplexVec::Ones(1)), p));
            return err;
          }};
}

const std::vector<CheckDef>& definitions() {
  static const std::vector<CheckDef> defs = {
      moment_map(),          level_section(),        proposition_negative_alpha(),
      retraction_idempotent(), s1_invariance_on_level(), phase_invariance_global(),
      formula_vs_oracle(),   basicness(),            closedness(),
      chart_nondegeneracy(), chart_consistency(),    bundle_roundtrip(),
      orbit_equality(),      example_w_is_scalar(),
  };
  return defs;
}

const CheckDef& find(const std::string& name) {
  for (const auto& def : definitions()) {
    if (def.name == name) return def;
  }
  throw Error(ErrorCode::UnknownCheck, name);
}

struct TrialOutcome {
  double err = kInf;
  Json sample;
};

TrialOutcome run_trial(const CheckDef& def, const CheckConfig& cfg, int trial) {
  TrialOutcome out;
  try {
    Rng rng = trial_rng(cfg.seed, def.name, trial);
    out.sample = def.sample(rng, cfg);
    out.sample["trial"] = trial;
    out.err = def.evaluate(out.sample, cfg);
    if (std::isnan(out.err)) out.err = kInf;
  } catch (const std::exception& e) {
    out.err = kInf;
    out.sample["error"] = e.what();
  }
  return out;
}

}  // namespace

void CheckConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (n < 1 || n > 8 || m < 1 || m > 8) {
    throw Error(ErrorCode::InvalidArgument, "dimensions must lie in 1..8");
  }
  if (!(h >= kMinStep)) throw Error(ErrorCode::StepTooSmall, "step below 1e-12");
  if (pinned && (pinned->n() != n || pinned->m() != m)) {
    throw Error(ErrorCode::DimMismatch, "pinned point does not match n, m");
  }
  for (const auto& [name, value] : tol) {
    find(name);
    (void)value;
  }
}

const std::vector<std::string>& check_registry() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& def : definitions()) out.push_back(def.name);
    return out;
  }();
  return names;
}

double default_tolerance(const std::string& name) { return find(name).tol; }

CheckResult run_check(const std::string& name, const CheckConfig& cfg, Execution exec) {
  const CheckDef& def = find(name);
  cfg.validate();
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < cfg.trials; ++t) outcomes[static_cast<std::size_t>(t)] = run_trial(def, cfg, t);
  } else {
    for (int t = 0; t < cfg.trials; ++t) outcomes[static_cast<std::size_t>(t)] = run_trial(def, cfg, t);
  }

  std::size_t worst = 0;
  for (std::size_t t = 1; t < outcomes.size(); ++t) {
    if (outcomes[t].err > outcomes[worst].err) worst = t;
  }
  CheckResult result;
  result.name = name;
  result.tol = cfg.tol.contains(name) ? cfg.tol.at(name) : def.tol;
  result.trials = cfg.trials;
  result.max_abs_err = outcomes[worst].err;
  result.passed = result.max_abs_err <= result.tol;
  result.witness = std::move(outcomes[worst].sample);
  return result;
}

std::vector<CheckResult> run_all(const CheckConfig& cfg, Execution exec) {
  std::vector<CheckResult> results;
  for (const auto& name : check_registry()) results.push_back(run_check(name, cfg, exec));
  return results;
}

double rerun_witness(const std::string& name, const CheckConfig& cfg, const Json& witness) {
  return find(name).evaluate(witness, cfg);
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

Json to_json(const CheckConfig& cfg) {
  Json tol = Json::object();
  for (const auto& [name, value] : cfg.tol) tol[name] = value;
  Json out{{"n", cfg.n}, {"m", cfg.m}, {"trials", cfg.trials},
           {"seed", cfg.seed}, {"h", cfg.h}, {"tol", tol}};
  if (cfg.pinned) out["pinned"] = to_json(*cfg.pinned);
  return out;
}

Json to_json(const CheckResult& result) {
  return {{"name", result.name},         {"max_abs_err", result.max_abs_err},
          {"tol", result.tol},           {"trials", result.trials},
          {"passed", result.passed},     {"witness", result.witness}};
}

}  // namespace wproj
