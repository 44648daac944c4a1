#pragma once

// Seeded property checks over random points, one per structural claim about
// the weighted projective space. Each check draws an independent sample per
// trial from an RNG stream keyed by (seed, check name, trial index), so the
// OpenMP and serial runners produce bit-identical results.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wproj/forms.hpp"
#include "wproj/hvec.hpp"
#include "wproj/serialize.hpp"

namespace wproj {

struct CheckConfig {
  int n = 2;
  int m = 2;
  int trials = 200;
  std::uint64_t seed = 42;
  double h = kDefaultStep;
  std::map<std::string, double> tol;
  /// When set, every trial uses this point instead of a random one.
  std::optional<HomPoint> pinned;

  /// Throws InvalidArgument unless trials >= 1 and 1 <= n, m <= 8.
  void validate() const;
};

struct CheckResult {
  std::string name;
  double max_abs_err = 0.0;
  double tol = 0.0;
  int trials = 0;
  bool passed = false;
  Json witness;
};

enum class Execution { Parallel, Serial };

/// Check names in report order.
const std::vector<std::string>& check_registry();

/// Throws UnknownCheck for names outside the registry.
double default_tolerance(const std::string& name);

CheckResult run_check(const std::string& name, const CheckConfig& cfg,
                      Execution exec = Execution::Parallel);

std::vector<CheckResult> run_all(const CheckConfig& cfg, Execution exec = Execution::Parallel);

/// Re-evaluates a single witness from a previous CheckResult.
double rerun_witness(const std::string& name, const CheckConfig& cfg, const Json& witness);

bool all_passed(const std::vector<CheckResult>& results);

Json to_json(const CheckConfig& cfg);
Json to_json(const CheckResult& result);

}  // namespace wproj
