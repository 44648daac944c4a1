// wproj: evaluate points and forms on the weighted projective space
// P_{+1,-1}(V + W), move between charts, and run the verification suite.
//
// Exit codes: 0 success, 2 usage or parse error, 3 domain error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wproj/bundle.hpp"
#include "wproj/error.hpp"
#include "wproj/serialize.hpp"
#include "wproj/symplectic.hpp"
#include "wproj/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

wproj::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return wproj::Json::parse(in);
  } catch (const wproj::Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("WPROJ_DEFAULT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("WPROJ_DEFAULT_SEED is not an integer");
    }
  }
  return 42;
}

struct EvalArgs {
  std::string point;
  std::string what;
  double alpha = 1.0;
  double beta = 0.0;
  double h = wproj::kDefaultStep;
  std::string chart;
};

int run_eval(const EvalArgs& args) {
  using namespace wproj;
  const HomPoint p = point_from_json(read_json_file(args.point));
  const auto ctx = ReductionContext::for_point(p, {args.alpha, args.beta});
  Json value;
  if (args.what == "hamiltonian") {
    value = hamiltonian(ctx, p);
  } else if (args.what == "lambda0") {
    value = normalize_to_level(ctx, p);
  } else if (args.what == "matrix") {
    value = to_json(canonical_matrix(p));
  } else if (args.what == "omega") {
    if (args.chart.empty()) {
      value = to_json(omega_formula(p));
    } else {
      const ChartCoords c = to_chart(p, parse_chart_id(args.chart));
      value = to_json(omega_in_chart(c));
      value["chart"] = to_json(c);
    }
  } else if (args.what == "omega-oracle") {
    value = to_json(omega_oracle(p, args.h, ctx.spec));
  } else {
    throw UsageError("unknown --what " + args.what);
  }
  std::cout << dump_fixed(Json{{"what", args.what}, {"value", value}}) << "\n";
  return 0;
}

struct TransitionArgs {
  std::string coords;
  std::string from;
  std::string to;
};

int run_transition(const TransitionArgs& args) {
  using namespace wproj;
  const Json j = read_json_file(args.coords);
  if (!j.is_object() || !j.contains("u") || !j.contains("fiber")) {
    throw UsageError("coords file needs \"u\" and \"fiber\"");
  }
  const ChartCoords c{parse_chart_id(args.from), vector_from_json(j.at("u")),
                      vector_from_json(j.at("fiber"))};
  std::cout << dump_fixed(to_json(transition(c, parse_chart_id(args.to)))) << "\n";
  return 0;
}

struct VerifyArgs {
  int n = 2;
  int m = 2;
  int trials = 200;
  std::optional<std::uint64_t> seed;
  double h = wproj::kDefaultStep;
  std::vector<std::string> tol;
  std::string check;
  std::string out;
  bool serial = false;
};

void print_table(const std::vector<wproj::CheckResult>& results) {
  std::printf("%-28s %14s %12s  %s\n", "check", "max_abs_err", "tol", "status");
  int passed = 0;
  for (const auto& r : results) {
    std::printf("%-28s %14.6e %12.3e  %s\n", r.name.c_str(), r.max_abs_err, r.tol,
                r.passed ? "PASS" : "FAIL");
    passed += r.passed ? 1 : 0;
  }
  std::printf("%d/%zu checks passed\n", passed, results.size());
}

int run_verify(const VerifyArgs& args, bool json_out) {
  using namespace wproj;
  CheckConfig cfg;
  cfg.n = args.n;
  cfg.m = args.m;
  cfg.trials = args.trials;
  cfg.seed = args.seed ? *args.seed : default_seed();
  cfg.h = args.h;
  for (const auto& entry : args.tol) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value");
    try {
      cfg.tol[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad tolerance value in " + entry);
    }
  }
  cfg.validate();

  const Execution exec = args.serial ? Execution::Serial : Execution::Parallel;
  std::vector<CheckResult> results;
  if (args.check.empty()) {
    results = run_all(cfg, exec);
  } else {
    results.push_back(run_check(args.check, cfg, exec));
  }

  Json report{{"config", to_json(cfg)}, {"version", kVersion}, {"all_passed", all_passed(results)}};
  report["results"] = Json::array();
  for (const auto& r : results) report["results"].push_back(to_json(r));
  const std::string text = dump_fixed(report, 2);

  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw UsageError("cannot write " + args.out);
    out << text << "\n";
  }
  if (json_out) {
    std::cout << text << "\n";
  } else {
    print_table(results);
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted projective space P_{+1,-1}(V+W): charts, reduced symplectic form, checks"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  app.add_flag("--json", json_out, "Machine-readable JSON on stdout");
  app.set_version_flag("--version", kVersion);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a quantity at a point");
  eval_cmd->add_option("--point", eval.point, "Point file {\"v\": [[re,im],...], \"w\": [...]}")
      ->required();
  eval_cmd->add_option("--what", eval.what, "hamiltonian|lambda0|matrix|omega|omega-oracle")
      ->required()
      ->check(CLI::IsMember({"hamiltonian", "lambda0", "matrix", "omega", "omega-oracle"}));
  eval_cmd->add_option("--alpha", eval.alpha, "Weight of dw dwbar in omega0");
  eval_cmd->add_option("--beta", eval.beta, "Level of the Hamiltonian");
  eval_cmd->add_option("--h", eval.h, "Finite-difference step");
  eval_cmd->add_option("--chart", eval.chart, "Chart for --what omega, e.g. V:0");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property checks");
  verify_cmd->add_option("--n", verify.n, "dim V")->check(CLI::Range(1, 8));
  verify_cmd->add_option("--m", verify.m, "dim W")->check(CLI::Range(1, 8));
  verify_cmd->add_option("--trials", verify.trials)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "RNG seed (default: $WPROJ_DEFAULT_SEED or 42)");
  verify_cmd->add_option("--h", verify.h, "Finite-difference step");
  verify_cmd->add_option("--tol", verify.tol, "Tolerance override name=value (repeatable)");
  verify_cmd->add_option("--check", verify.check, "Run a single named check");
  verify_cmd->add_option("--out", verify.out, "Write the JSON report here");
  verify_cmd->add_flag("--serial", verify.serial, "Use the serial reference runner");

  TransitionArgs trans;
  auto* trans_cmd = app.add_subcommand("transition", "Change chart coordinates");
  trans_cmd->add_option("--coords", trans.coords, "File {\"u\": [...], \"fiber\": [...]}")
      ->required();
  trans_cmd->add_option("--from", trans.from, "Source chart, e.g. V:0")->required();
  trans_cmd->add_option("--to", trans.to, "Target chart")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*verify_cmd) return run_verify(verify, json_out);
    return run_transition(trans);
  } catch (const wproj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_domain_error() ? kExitDomain : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
