#include "sobrep/report_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

namespace sobrep {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.16e}", x);
}

namespace {

bool scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void emit(std::string& out, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "\"" + format_number(x) + "\"";
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      const bool flat = std::all_of(j.begin(), j.end(), scalar);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(out, e, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(k).dump() + ": ";
        emit(out, v, depth + 1);
      }
      out += "\n" + close + "}";
      break;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json ratios(const std::vector<double>& x) {
  json a = json::array();
  for (double v : x) a.push_back(v);
  return a;
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

std::string dump_csv(const CsvTable& table) {
  std::string out;
  const auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

std::vector<std::string> write_artifacts(const std::vector<Artifact>& artifacts, const std::string& dir,
                                         const std::string& format) {
  if (format != "json" && format != "csv" && format != "both") {
    throw Error(ErrorCode::config, fmt::format("format must be json, csv or both, got '{}'", format));
  }
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  const auto put = [&](const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::path(dir) / name).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::config, fmt::format("cannot write '{}'", path));
    os << text;
    written.push_back(path);
  };
  for (const auto& a : artifacts) {
    if (a.json && format != "csv") put(a.stem + ".json", dump_json(*a.json));
    if (a.csv && format != "json") put(a.stem + ".csv", dump_csv(*a.csv));
  }
  return written;
}

json to_json(const GapReport& g) {
  return {{"R", g.R},
          {"c_pi", g.c_pi},
          {"c_G", g.c_G},
          {"R_E", g.R_E},
          {"sigma_min", g.sigma_min},
          {"sigma_max", g.sigma_max},
          {"invertible", g.invertible},
          {"above_threshold", g.above_threshold}};
}

json to_json(const FactorizationReport& f) {
  return {{"residual", f.residual}, {"R", f.R}, {"m", f.m}, {"R_E", f.R_E}, {"kernel_tail", f.kernel_tail}};
}

json to_json(const SandwichReport& r) {
  return {{"family", r.family},
          {"order", r.order},
          {"R", r.R},
          {"shift", r.shift},
          {"ensemble_size", r.ensemble_size},
          {"dimension", static_cast<std::int64_t>(r.dimension)},
          {"lower", r.lower},
          {"upper", r.upper},
          {"lower_ratios", ratios(r.lower_ratios)},
          {"upper_ratios", ratios(r.upper_ratios)},
          {"labels", r.labels}};
}

json to_json(const NormReport& r) {
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  return {{"family", to_string(r.family)}, {"order", r.order}, {"R", r.R}, {"value", r.value}, {"diagnostics", d}};
}

json to_json(const CriterionResult& r) {
  json m = json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"metrics", m}, {"detail", r.detail}};
}

json to_json(const Stability& s) { return {{"lower_spread", s.lower_spread}, {"upper_spread", s.upper_spread}}; }

CsvTable ratios_csv(const SandwichReport& r) {
  CsvTable t;
  t.header = {"family", "order", "dimension", "label", "lower_ratio", "upper_ratio"};
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    t.rows.push_back({r.family, format_number(r.order), std::to_string(r.dimension), r.labels[i],
                      format_number(r.lower_ratios[i]), format_number(r.upper_ratios[i])});
  }
  return t;
}

}  // namespace sobrep
