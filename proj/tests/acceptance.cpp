// Acceptance suite: one pass/fail line per criterion, each at its pinned
// tolerance and runtime budget. Exit status is nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wproj/bundle.hpp"
#include "wproj/error.hpp"
#include "wproj/serialize.hpp"
#include "wproj/symplectic.hpp"
#include "wproj/verify.hpp"

using namespace wproj;
using namespace wproj::test;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // <= 0: no runtime bound
  std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool no_real_root(const ReductionContext& ctx, const HomPoint& p) {
  try {
    normalize_to_level(ctx, p);
  } catch (const Error& e) {
    return e.code() == ErrorCode::NoRealRoot;
  }
  return false;
}

TwoForm reduced_at_one() {
  const Frame f{1, 1};
  TwoForm out = TwoForm::zero(f);
  out.set(f.v(0), f.vbar(0), 0.25 * I);
  out.set(f.w(0), f.wbar(0), 0.25 * I);
  out.set(f.v(0), f.wbar(0), 0.25 * I);
  out.set(f.vbar(0), f.w(0), -0.25 * I);
  return out;
}

TwoFormField formula_field(int n) {
  return [n](const ComplexVec& z) { return omega_formula(HomPoint::from_stacked(z, n)); };
}

ComplexVec level_tangent(const HomPoint& p, ComplexVec xi) {
  ComplexVec g(p.n() + p.m());
  g << p.v(), -p.w();
  xi -= ((g.adjoint() * xi)(0).real() / g.squaredNorm()) * g;
  return real_tangent(Frame{p.n(), p.m()}, xi);
}

// ---------------------------------------------------------------------------

Outcome moment_map_identity() {
  std::mt19937_64 rng(1001);
  double exact = 0.0;
  double fd = 0.0;
  for (double alpha : {1.0, 2.0, -1.0}) {
    for (int t = 0; t < 200; ++t) {
      const HomPoint p = random_point(rng, 1 + t % 4, 1 + (t / 4) % 4);
      const auto ctx = ReductionContext::for_point(p, {alpha, 0.0});
      const ComplexVec c = interior_product(circle_generator(p), omega0(ctx)).coeff;
      exact = std::max(exact, sup(ComplexVec(c + hamiltonian_differential(ctx, p).coeff)));
      const OneForm d = differential(hamiltonian_field(ctx), ctx.frame, p.stacked());
      fd = std::max(fd, sup(ComplexVec(c + d.coeff)));
    }
  }
  return {exact <= 1e-8 && fd <= 1e-6,
          fmt("analytic %.2e (tol 1e-8), finite-difference %.2e (tol 1e-6)", exact, fd)};
}

Outcome level_reachability() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  int failures = 0;
  int rejected = 0;
  for (int t = 0; t < 1000; ++t) {
    const HomPoint p = random_point(rng, 1 + t % 4, 1 + (t / 4) % 4);
    for (double beta : {-1.0, 0.0, 1.0}) {
      const auto ctx = ReductionContext::for_point(p, {1.0, beta});
      try {
        worst = std::max(worst, std::abs(hamiltonian(ctx, act(normalize_to_level(ctx, p), p)) - beta));
      } catch (const Error&) {
        ++failures;
      }
    }
    rejected += no_real_root(ReductionContext::for_point(p, {-1.0, 0.0}), p) ? 1 : 0;
  }
  return {failures == 0 && worst <= 1e-10 && rejected == 1000,
          fmt("alpha=1: max |H-beta| %.2e over 3000 solves, %d failures; alpha=-1: NoRealRoot %d/1000",
              worst, failures, rejected)};
}

Outcome lambda_fixtures() {
  const HomPoint a = pt({1.0, 0.0}, {2.0});
  const double la = normalize_to_level(ReductionContext::for_point(a), a);
  const HomPoint b = pt({1.0}, {1.0});
  const double lb = normalize_to_level(ReductionContext::for_point(b, {1.0, 1.5}), b);
  const double ea = std::abs(la - std::sqrt(2.0));
  const double eb = std::abs(lb - std::sqrt(2.0));
  return {ea <= 1e-12 && eb <= 1e-12,
          fmt("beta=0: lambda %.17g (err %.1e); beta=1.5: lambda %.17g (err %.1e, expected sqrt 2)",
              la, ea, lb, eb)};
}

Outcome closed_formula() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (const auto [n, m] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    for (int t = 0; t < 50; ++t) {
      const HomPoint p = random_point(rng, n, m);
      const TwoForm oracle = omega_oracle(p);
      worst = std::max(worst, (omega_formula(p).coeff - oracle.coeff).norm() / oracle.coeff.norm());
    }
  }
  const TwoForm expected = reduced_at_one();
  const double fixture = std::max(sup(ComplexMat(omega_formula(pt({1.0}, {1.0})).coeff - expected.coeff)),
                                  sup(ComplexMat(omega_oracle(pt({1.0}, {1.0})).coeff - expected.coeff)));
  return {worst <= 1e-6 && fixture <= 1e-9,
          fmt("formula vs pullback: max rel. Frobenius %.2e (tol 1e-6); (1,1) fixture err %.2e (tol 1e-9)",
              worst, fixture)};
}

Outcome closedness() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 2;
    const HomPoint p = random_point(rng, n, 1 + (t / 2) % 2);
    worst = std::max(worst, exterior_derivative(formula_field(n), p.stacked()).max_abs());
  }
  return {worst <= 1e-5, fmt("max |d omega| %.2e over 50 points (tol 1e-5)", worst)};
}

Outcome basicness() {
  std::mt19937_64 rng(1006);
  double contraction = 0.0;
  double pulled = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const int m = 1 + (t / 3) % 3;
    const HomPoint p = random_point(rng, n, m);
    const TwoForm omega = omega_formula(p);
    contraction = std::max(contraction, sup(interior_product(circle_generator(p), omega).coeff));
    contraction = std::max(contraction, sup(interior_product(radial_generator(p), omega).coeff));
    const cplx lambda = random_scalar(rng);
    const TwoForm back = pullback_two_form(scaling_action(Frame{n, m}, lambda), formula_field(n), p.stacked());
    pulled = std::max(pulled, sup(ComplexMat(back.coeff - omega.coeff)));
  }
  return {contraction <= 1e-7 && pulled <= 1e-6,
          fmt("generator contractions %.2e (tol 1e-7); pullback along act(lambda) %.2e (tol 1e-6)",
              contraction, pulled)};
}

Outcome phase_invariance() {
  std::mt19937_64 rng(1007);
  double level = 0.0;
  double global = 0.0;
  for (int pair = 0; pair < 100; ++pair) {
    const HomPoint raw = random_point(rng, 1 + pair % 3, 1 + (pair / 3) % 3);
    const double beta = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const auto ctx = ReductionContext::for_point(raw, {1.0, beta});
    const HomPoint p = retract(ctx, raw);
    const TwoForm w0 = omega0(ctx);
    const ComplexVec xi = level_tangent(p, random_vec(rng, p.n() + p.m()));
    const ComplexVec eta = level_tangent(p, random_vec(rng, p.n() + p.m()));
    for (int k = 0; k < 10; ++k) {
      const double t = -3.0 + 0.6 * k;
      const SmoothMap flow = phase_action(ctx.frame, t);
      const ComplexMat push = flow.jacobian(p.stacked());
      const HomPoint moved = circle_flow(p, t);
      const OneForm dh = hamiltonian_differential(ctx, moved);
      level = std::max({level, std::abs(w0.evaluate(push * xi, push * eta) - w0.evaluate(xi, eta)),
                        std::abs(dh.apply(push * xi)), std::abs(hamiltonian(ctx, moved) - beta)});
      const TwoForm pulled = pullback_two_form(flow, [&](const ComplexVec&) { return w0; }, p.stacked());
      global = std::max(global, sup(ComplexMat(pulled.coeff - w0.coeff)));
    }
  }
  return {level <= 1e-9 && global <= 1e-12,
          fmt("on-level invariance %.2e (tol 1e-9, 10 t x 100 pairs); global phase pullback %.2e (tol 1e-12)",
              level, global)};
}

Outcome tensor_bundle() {
  std::mt19937_64 rng(1008);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const HomPoint p = random_point(rng, 1 + t % 4, 1 + (t / 4) % 4);
    worst = std::max(worst, orbit_distance(decompose_rank1(embed_tautological(p).vec, 1e-9), p));
  }
  int rejected = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    const int m = 2 + (t / 3) % 3;
    const ComplexMat r2 = random_vec(rng, n) * random_vec(rng, m).transpose() +
                          random_vec(rng, n) * random_vec(rng, m).transpose();
    try {
      decompose_rank1(r2, 1e-9);
    } catch (const Error& e) {
      rejected += e.code() == ErrorCode::NotRankOne ? 1 : 0;
    }
  }
  return {worst <= 1e-8 && rejected == 100,
          fmt("roundtrip orbit distance %.2e over 1000 points (tol 1e-8); NotRankOne %d/100", worst, rejected)};
}

Outcome charts() {
  std::mt19937_64 rng(1009);
  double roundtrip = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 4;
    const int m = 1 + (t / 4) % 4;
    const HomPoint p = random_point(rng, n, m);
    const ChartId a{t % 2 ? Atlas::V : Atlas::W, t % 2 ? t % n : t % m};
    const ChartId b{t % 3 ? Atlas::W : Atlas::V, t % 3 ? (t / 2) % m : (t / 2) % n};
    const ChartCoords c = to_chart(p, a);
    roundtrip = std::max(roundtrip, orbit_distance(from_chart(c), p));
    roundtrip = std::max(roundtrip, sup(ComplexVec(to_chart(from_chart(c), a).stacked() - c.stacked())));
    roundtrip = std::max(roundtrip, sup(ComplexVec(transition(transition(c, b), a).stacked() - c.stacked())));
  }

  double consistency = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const int m = 1 + (t / 3) % 3;
    const HomPoint p = random_point(rng, n, m);
    const ChartId from{t % 2 ? Atlas::V : Atlas::W, t % 2 ? t % n : t % m};
    const ChartId to{t % 2 ? Atlas::W : Atlas::V, t % 2 ? (t / 2) % m : (t / 2) % n};
    const ChartCoords c = to_chart(p, from);
    const int u_dim = chart_frame(to, n, m).n;
    const TwoForm pulled = pullback_two_form(
        chart_transition_map(from, to, n, m),
        [to, u_dim](const ComplexVec& z) { return omega_in_chart(chart_from_stacked(to, z, u_dim)); },
        c.stacked());
    consistency = std::max(consistency, sup(ComplexMat(pulled.coeff - omega_in_chart(c).coeff)));
  }

  double min_det = INFINITY;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const int m = 1 + (t / 3) % 3;
    const HomPoint p = random_point(rng, n, m);
    const ChartId chart{t % 2 ? Atlas::V : Atlas::W, t % 2 ? t % n : t % m};
    min_det = std::min(min_det, std::abs(omega_in_chart(to_chart(p, chart)).coeff.determinant()));
  }
  return {roundtrip <= 1e-9 && consistency <= 1e-6 && min_det > 1e-10,
          fmt("roundtrip/triangle %.2e (tol 1e-9); transition consistency %.2e (tol 1e-6); min |det| %.3e (> 1e-10)",
              roundtrip, consistency, min_det)};
}

// ---- CLI ----------------------------------------------------------------

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run_cli(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto err = dir / ("wproj_acceptance_err_" + std::to_string(::getpid()));
  const std::string cmd = std::string(WPROJ_CLI_PATH) + " " + args + " 2> " + err.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t got;
  while (pipe && (got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int raw = pipe ? ::pclose(pipe) : -1;
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, ss.str()};
}

Outcome cli_contract() {
  const auto point = std::filesystem::temp_directory_path() /
                     ("wproj_acceptance_point_" + std::to_string(::getpid()) + ".json");
  std::ofstream(point) << R"({"v":[[1,0],[0,0]],"w":[[2,0]]})";
  const std::string base = "eval --point " + point.string();

  bool ok = true;
  std::string detail;
  const Run l1 = run_cli(base + " --what lambda0");
  const Run l2 = run_cli(base + " --what lambda0");
  const double lambda = Json::parse(l1.out).at("value").get<double>();
  ok = ok && l1.status == 0 && l1.out == l2.out && std::abs(lambda - std::sqrt(2.0)) <= 1e-15;

  const Run h1 = run_cli(base + " --what hamiltonian --alpha 1");
  const Run h2 = run_cli(base + " --what hamiltonian --alpha 1");
  const double h = Json::parse(h1.out).at("value").get<double>();
  ok = ok && h1.status == 0 && h1.out == h2.out && h == -1.5;

  const Run n1 = run_cli(base + " --what lambda0 --alpha -1");
  const Run n2 = run_cli(base + " --what lambda0 --alpha -1");
  ok = ok && n1.status == 3 && n1.err.find("NoRealRoot") != std::string::npos && n1.err == n2.err;

  const auto start = std::chrono::steady_clock::now();
  const Run v = run_cli("verify --n 2 --m 2 --trials 200 --seed 42 --json");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int passed = 0;
  if (v.status == 0) {
    const Json report = Json::parse(v.out);
    for (const auto& r : report.at("results")) passed += r.at("passed").get<bool>() ? 1 : 0;
  }
  ok = ok && v.status == 0 && passed == 14 && seconds < 60.0;
  std::filesystem::remove(point);
  detail = fmt("lambda0 %.17g, H %.17g, alpha=-1 exit %d; verify exit %d, %d/14 passed in %.2f s",
               lambda, h, n1.status, v.status, passed, seconds);
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "moment-map identity", 5.0, moment_map_identity},
      {2, "level sets meet every orbit iff alpha > 0", 2.0, level_reachability},
      {3, "level-scaling lambda fixtures", 0.0, lambda_fixtures},
      {4, "reduced form: closed formula vs pullback", 30.0, closed_formula},
      {5, "reduced form is closed", 30.0, closedness},
      {6, "reduced form is basic", 0.0, basicness},
      {7, "circle invariance of omega0 on levels", 0.0, phase_invariance},
      {8, "rank-one tensor bundle isomorphism", 0.0, tensor_bundle},
      {9, "chart atlases", 0.0, charts},
      {10, "CLI contract", 0.0, cli_contract},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0.0 || seconds < c.budget_s;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("[%s] %2d %-45s %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                out.detail.c_str(), seconds,
                c.budget_s > 0.0 ? fmt(" (budget %.0f s)", c.budget_s).c_str() : "");
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
