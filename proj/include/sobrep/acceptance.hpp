#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sobrep {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  /// Ordered (name, value) pairs; "*_tol" entries hold the thresholds.
  std::vector<std::pair<std::string, double>> metrics;
  std::string detail;
};

constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1..10).  Failures inside the experiment
/// are reported as a failing result with the error text in `detail`.
CriterionResult run_criterion(int id, std::uint64_t seed = 20240601);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240601);

/// "PASS  3 kernel-closed-forms  euclid_rel_err=... (0.41 s)"
std::string summary_line(const CriterionResult& r);

}  // namespace sobrep
