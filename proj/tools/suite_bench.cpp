// Compares the OpenMP suite runner against the serial reference: same
// reports, different wall time. Elevate --trials to see scaling.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "finstoch/harness.hpp"

using finstoch::harness::GenConfig;
using finstoch::harness::PropReport;

namespace {

bool same_report(const PropReport& a, const PropReport& b) {
  auto ja = a.to_json();
  auto jb = b.to_json();
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  return ja == jb;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel suite runner benchmark"};
  GenConfig cfg;
  cfg.trials = 1000;
  std::vector<std::string> suites;
  app.add_option("--trials", cfg.trials, "trials per suite");
  app.add_option("--seed", cfg.seed, "generator seed");
  app.add_option("--suite", suites, "suites to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  if (suites.empty()) suites = finstoch::harness::suite_names();

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-32s %12s %12s %9s %s\n", "suite", "serial ms", "parallel ms",
              "speedup", "match");

  int mismatches = 0;
  double serial_total = 0, parallel_total = 0;
  for (const std::string& name : suites) {
    PropReport serial = finstoch::harness::run_suite_serial(name, cfg);
    PropReport parallel = finstoch::harness::run_suite(name, cfg);
    bool match = same_report(serial, parallel);
    mismatches += !match;
    serial_total += serial.elapsed_ms;
    parallel_total += parallel.elapsed_ms;
    std::printf("%-32s %12.2f %12.2f %8.2fx %s\n", name.c_str(),
                serial.elapsed_ms, parallel.elapsed_ms,
                serial.elapsed_ms / parallel.elapsed_ms,
                match ? "yes" : "NO");
  }
  std::printf("%-32s %12.2f %12.2f %8.2fx\n", "total", serial_total,
              parallel_total, serial_total / parallel_total);
  if (mismatches) {
    std::fprintf(stderr, "%d suite(s) diverged between runners\n", mismatches);
    return 1;
  }
  return 0;
}
