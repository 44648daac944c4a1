// Wall-clock comparison of the OpenMP and serial verification runners.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "wproj/verify.hpp"

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  wproj::CheckConfig cfg;
  cfg.trials = argc > 1 ? std::atoi(argv[1]) : 200;
  cfg.n = argc > 2 ? std::atoi(argv[2]) : 2;
  cfg.m = argc > 3 ? std::atoi(argv[3]) : 2;

  std::printf("threads=%d trials=%d n=%d m=%d\n", omp_get_max_threads(), cfg.trials, cfg.n, cfg.m);
  std::printf("%-28s %12s %12s %8s\n", "check", "serial ms", "omp ms", "speedup");
  double total_serial = 0.0;
  double total_parallel = 0.0;
  bool identical = true;
  for (const auto& name : wproj::check_registry()) {
    wproj::CheckResult serial;
    wproj::CheckResult parallel;
    const double ts = time_ms([&] { serial = wproj::run_check(name, cfg, wproj::Execution::Serial); });
    const double tp = time_ms([&] { parallel = wproj::run_check(name, cfg, wproj::Execution::Parallel); });
    identical = identical && serial.max_abs_err == parallel.max_abs_err &&
                serial.witness == parallel.witness;
    total_serial += ts;
    total_parallel += tp;
    std::printf("%-28s %12.2f %12.2f %8.2f\n", name.c_str(), ts, tp, ts / tp);
  }
  std::printf("%-28s %12.2f %12.2f %8.2f\n", "total", total_serial, total_parallel,
              total_serial / total_parallel);
  std::printf("results identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
