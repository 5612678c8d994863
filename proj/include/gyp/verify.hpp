#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gyp {

struct SuiteReport {
  std::string suite;
  int trials = 0;
  double max_violation = 0.0;
  bool pass = false;
  std::string detail;  // first counterexample, when failing
};

/// Known suites: holder, lowerbound, monotonic, transform, quantize,
/// identity, limits, rnconsistency, divergence. "all" runs every suite.
/// Randomized trials are driven by the seed and fully reproducible.
std::vector<SuiteReport> run_verify_suites(const std::string& suite, std::uint64_t seed);

std::vector<std::string> verify_suite_names();

}  // namespace gyp
