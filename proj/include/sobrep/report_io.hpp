#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sobrep/acceptance.hpp"
#include "sobrep/harness.hpp"
#include "sobrep/sobolev.hpp"

namespace sobrep {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// One output unit: <stem>.json and/or <stem>.csv.
struct Artifact {
  std::string stem;
  std::optional<nlohmann::json> json;
  std::optional<CsvTable> csv;
};

/// Scientific notation with 17 significant digits; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_number(double x);

/// Deterministic JSON text: sorted keys, two-space indent, floats through
/// format_number (non-finite values become strings), trailing newline.
std::string dump_json(const nlohmann::json& j);

/// Comma separated, fields quoted when they contain ',', '"' or a newline.
std::string dump_csv(const CsvTable& table);

/// Writes every artifact into `dir` (created if missing) in the requested
/// format (json | csv | both).  Returns the written paths.
std::vector<std::string> write_artifacts(const std::vector<Artifact>& artifacts, const std::string& dir,
                                         const std::string& format);

nlohmann::json to_json(const GapReport& g);
nlohmann::json to_json(const FactorizationReport& f);
nlohmann::json to_json(const SandwichReport& r);
nlohmann::json to_json(const NormReport& r);
nlohmann::json to_json(const CriterionResult& r);
nlohmann::json to_json(const Stability& s);

/// Per-ensemble-member rows: label, lower ratio, upper ratio.
CsvTable ratios_csv(const SandwichReport& r);

}  // namespace sobrep
