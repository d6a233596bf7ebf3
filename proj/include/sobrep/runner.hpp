#pragma once

#include <exception>
#include <string>
#include <vector>

#include "sobrep/config.hpp"
#include "sobrep/report_io.hpp"

namespace sobrep {

struct RunResult {
  std::vector<Artifact> artifacts;
  /// Human-readable lines for the terminal.
  std::vector<std::string> summary;
  /// false when report-all has a failing criterion.
  bool ok = true;
};

/// Validates `cfg` for `command` and runs it.  Commands: norms, kernel,
/// factorize, gap, compare, report-all.
RunResult execute(const RunConfig& cfg, const std::string& command);

/// {"error": {"code": ..., "message": ...}}
nlohmann::json error_json(const std::exception& e);

}  // namespace sobrep
