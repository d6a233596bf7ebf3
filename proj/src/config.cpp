#include "sobrep/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

namespace sobrep {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::config, what); }

void allow_keys(const json& j, const std::string& where, const std::set<std::string>& keys) {
  if (!j.is_object()) fail(fmt::format("{} must be an object", where));
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!keys.count(k)) fail(fmt::format("unknown key '{}.{}'", where, k));
  }
}

template <class T>
T get(const json& j, const std::string& where, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(fmt::format("'{}.{}' has the wrong type", where, key));
  }
}

Complex scalar(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(fmt::format("{}: expected a number or [re, im]", where));
}

Eigen::MatrixXcd matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(fmt::format("{}: expected a non-empty array of rows", where));
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) fail(fmt::format("{}: rows must be arrays", where));
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(fmt::format("{}: row {} has the wrong length", where, r));
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scalar(row[static_cast<std::size_t>(c)], where);
  }
  return m;
}

Eigen::VectorXcd vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(fmt::format("{}: expected a non-empty array", where));
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar(j[i], where);
  return v;
}

AlgebraPtr parse_algebra(const json& j) {
  allow_keys(j, "group.algebra", {"preset", "dim", "structure_constants", "labels"});
  if (j.contains("preset")) {
    const auto preset = get<std::string>(j, "group.algebra", "preset", "");
    if (preset == "su2") return LieAlgebra::su2();
    if (preset == "axb") return LieAlgebra::axb();
    if (preset == "abelian") return LieAlgebra::abelian(get<int>(j, "group.algebra", "dim", 1));
    fail(fmt::format("unknown algebra preset '{}'", preset));
  }
  const int n = get<int>(j, "group.algebra", "dim", 0);
  if (n < 1) fail("group.algebra.dim must be >= 1");
  if (!j.contains("structure_constants") || !j.at("structure_constants").is_array()) {
    fail("group.algebra needs a preset or structure_constants");
  }
  const json& sc = j.at("structure_constants");
  const auto n3 = static_cast<std::size_t>(n) * n * n;
  std::vector<double> c(n3, 0.0);
  if (!sc.empty() && sc[0].is_array()) {
    // sparse [i, j, k, c]: [X_i, X_j] has c along X_k; the (j, i, k) entry is set to -c
    for (const auto& e : sc) {
      if (!e.is_array() || e.size() != 4) fail("structure constant entries must be [i, j, k, c]");
      const int a = e[0].get<int>(), b = e[1].get<int>(), k = e[2].get<int>();
      if (a < 0 || b < 0 || k < 0 || a >= n || b >= n || k >= n) {
        fail(fmt::format("structure constant index ({}, {}, {}) out of range", a, b, k));
      }
      const double v = e[3].get<double>();
      c[(static_cast<std::size_t>(a) * n + b) * n + k] = v;
      c[(static_cast<std::size_t>(b) * n + a) * n + k] = -v;
    }
  } else {
    if (sc.size() != n3) fail(fmt::format("dense structure_constants need {} entries, got {}", n3, sc.size()));
    for (std::size_t i = 0; i < n3; ++i) c[i] = sc[i].get<double>();
  }
  return std::make_shared<const LieAlgebra>(n, std::move(c),
                                            get<std::vector<std::string>>(j, "group.algebra", "labels", {}));
}

VectorNorm parse_norm(const json& j) {
  if (j.is_string()) {
    const auto kind = norm_kind_from_string(j.get<std::string>());
    if (kind == NormKind::hermitian) fail("a hermitian norm needs {\"kind\": \"hermitian\", \"gram\": [...]}");
    return VectorNorm(kind);
  }
  allow_keys(j, "representation.norm", {"kind", "gram"});
  const auto kind = get<std::string>(j, "representation.norm", "kind", "l2");
  if (kind != "hermitian") return VectorNorm(norm_kind_from_string(kind));
  if (!j.contains("gram")) fail("representation.norm.gram is required for a hermitian norm");
  return VectorNorm::hermitian(matrix(j.at("gram"), "representation.norm.gram"));
}

}  // namespace

RunConfig parse_config(const json& j) {
  allow_keys(j, "config", {"group", "representation", "experiment", "output"});
  RunConfig cfg;

  if (j.contains("group")) {
    const json& g = j.at("group");
    allow_keys(g, "group", {"model", "algebra", "nodes_per_axis", "half_width", "band"});
    if (g.contains("model")) cfg.group.model = get<std::string>(g, "group", "model", "");
    if (g.contains("algebra")) cfg.group.algebra = parse_algebra(g.at("algebra"));
    cfg.group.nodes_per_axis = get<int>(g, "group", "nodes_per_axis", 0);
    cfg.group.half_width = get<double>(g, "group", "half_width", 0.0);
    cfg.group.band = get<int>(g, "group", "band", 0);
  }

  if (j.contains("representation")) {
    const json& r = j.at("representation");
    allow_keys(r, "representation",
               {"kind", "N", "n", "nodes_per_axis", "spin", "band", "matrices", "half_width", "norm"});
    auto& rs = cfg.representation;
    rs.kind = get<std::string>(r, "representation", "kind", rs.kind);
    rs.N = get<int>(r, "representation", "N", rs.N);
    rs.n = get<int>(r, "representation", "n", rs.n);
    rs.nodes_per_axis = get<int>(r, "representation", "nodes_per_axis", rs.nodes_per_axis);
    rs.spin = get<double>(r, "representation", "spin", rs.spin);
    rs.band = get<int>(r, "representation", "band", rs.band);
    rs.half_width = get<double>(r, "representation", "half_width", rs.half_width);
    if (r.contains("matrices")) {
      const json& ms = r.at("matrices");
      if (!ms.is_array()) fail("representation.matrices must be an array of matrices");
      for (std::size_t i = 0; i < ms.size(); ++i) {
        rs.matrices.push_back(matrix(ms[i], fmt::format("representation.matrices[{}]", i)));
      }
    }
    if (r.contains("norm")) rs.norm = parse_norm(r.at("norm"));
    if (rs.kind != "torus_regular" && rs.kind != "su2_irrep" && rs.kind != "euclidean_matrix") {
      fail(fmt::format("unknown representation kind '{}'", rs.kind));
    }
    if (rs.kind == "euclidean_matrix" && rs.matrices.empty()) fail("euclidean_matrix needs representation.matrices");
  }

  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    allow_keys(e, "experiment",
               {"R", "m", "k", "s", "epsilon", "ensemble_size", "seed", "truncations", "R_values", "sandwich",
                "families", "vector", "criteria"});
    auto& es = cfg.experiment;
    es.R = get<double>(e, "experiment", "R", es.R);
    es.m = get<int>(e, "experiment", "m", es.m);
    es.k = get<int>(e, "experiment", "k", es.k);
    es.s = get<double>(e, "experiment", "s", es.s);
    es.epsilon = get<double>(e, "experiment", "epsilon", es.epsilon);
    es.ensemble_size = get<int>(e, "experiment", "ensemble_size", es.ensemble_size);
    es.seed = get<std::uint64_t>(e, "experiment", "seed", es.seed);
    es.truncations = get<std::vector<int>>(e, "experiment", "truncations", {});
    es.R_values = get<std::vector<double>>(e, "experiment", "R_values", {});
    es.sandwich = get<std::string>(e, "experiment", "sandwich", es.sandwich);
    es.families = get<std::vector<std::string>>(e, "experiment", "families", {});
    es.criteria = get<std::vector<int>>(e, "experiment", "criteria", {});
    if (e.contains("vector")) es.vector = vector(e.at("vector"), "experiment.vector");
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    allow_keys(o, "output", {"dir", "format"});
    cfg.output.dir = get<std::string>(o, "output", "dir", cfg.output.dir);
    cfg.output.format = get<std::string>(o, "output", "format", cfg.output.format);
  }
  if (cfg.output.format != "json" && cfg.output.format != "csv" && cfg.output.format != "both") {
    fail(fmt::format("output.format must be json, csv or both, got '{}'", cfg.output.format));
  }

  // model / algebra consistency
  const auto& kind = cfg.representation.kind;
  const std::string implied = kind == "torus_regular" ? "torus" : kind == "su2_irrep" ? "su2" : "euclidean";
  if (cfg.group.model && *cfg.group.model != implied) {
    fail(fmt::format("group.model '{}' does not match representation kind '{}'", *cfg.group.model, kind));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(fmt::format("cannot open config '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
  }
  return parse_config(j);
}

Representation build_representation(const RunConfig& cfg, std::optional<int> N) {
  const auto& rs = cfg.representation;
  Representation rep = [&] {
    if (rs.kind == "torus_regular") return Representation::torus_regular(N.value_or(rs.N), rs.n, rs.norm, rs.nodes_per_axis);
    if (rs.kind == "su2_irrep") return Representation::su2_irrep(rs.spin, rs.norm, rs.band);
    return Representation::euclidean_matrix(rs.matrices, rs.norm, rs.half_width,
                                            rs.nodes_per_axis > 0 ? rs.nodes_per_axis : 65536);
  }();
  if (cfg.group.algebra && cfg.group.algebra->distance_to(*rep.algebra()) > 1e-12) {
    fail(fmt::format("group.algebra does not match the algebra of {}", rep.name()));
  }
  return rep;
}

ModelPtr build_model(const RunConfig& cfg) {
  const Representation rep = build_representation(cfg);
  const auto& m = *rep.model();
  const auto& g = cfg.group;
  switch (m.kind()) {
    case GroupKind::torus:
      return g.nodes_per_axis > 0 ? GroupModel::torus(m.dim(), g.nodes_per_axis) : rep.model();
    case GroupKind::euclidean:
      if (g.nodes_per_axis > 0 || g.half_width > 0.0) {
        return GroupModel::euclidean(m.dim(), g.half_width > 0.0 ? g.half_width : m.half_width(),
                                     g.nodes_per_axis > 0 ? g.nodes_per_axis : m.nodes_per_axis());
      }
      return rep.model();
    case GroupKind::su2:
      return g.band > 0 ? GroupModel::su2(g.band) : rep.model();
  }
  return rep.model();
}

void validate(const RunConfig& cfg, const std::string& command) {
  static const std::set<std::string> commands{"norms", "kernel", "factorize", "gap", "compare", "report-all"};
  if (!commands.count(command)) fail(fmt::format("unknown command '{}'", command));
  const auto& e = cfg.experiment;
  const auto& rs = cfg.representation;
  if (command == "report-all") {
    for (int c : e.criteria)
      if (c < 1 || c > 10) fail(fmt::format("experiment.criteria entries must be in 1..10, got {}", c));
    return;
  }
  if (rs.kind == "torus_regular" && (rs.N < 0 || rs.n < 1)) fail("torus_regular needs N >= 0 and n >= 1");
  if (!(e.R > 0.0)) fail(fmt::format("experiment.R must be positive, got {}", e.R));
  for (double R : e.R_values)
    if (!(R > 0.0)) fail(fmt::format("experiment.R_values must be positive, got {}", R));
  if (e.ensemble_size < 0) fail("experiment.ensemble_size must be >= 0");
  if (e.k < 0) fail(fmt::format("experiment.k must be >= 0, got {}", e.k));
  for (int N : e.truncations)
    if (N < 0) fail(fmt::format("experiment.truncations must be >= 0, got {}", N));
  if (!e.truncations.empty() && rs.kind != "torus_regular") {
    fail("experiment.truncations only applies to torus_regular representations");
  }
  const int n = rs.kind == "torus_regular" ? rs.n : rs.kind == "su2_irrep" ? 3 : static_cast<int>(rs.matrices.size());
  if (command == "kernel" || command == "factorize") {
    if (e.m < 1) fail(fmt::format("experiment.m must be >= 1, got {}", e.m));
    if (command == "factorize" && 2 * e.m - n - 1 < 0) {
      fail(fmt::format("factorize needs 2m - n - 1 >= 0; with n = {} use m >= {}", n, (n + 2) / 2));
    }
    if (command == "kernel" && rs.kind != "su2_irrep" && 2 * e.m <= n) {
      fail(fmt::format("the kernel is unbounded at e when 2m <= n; with n = {} use m >= {}", n, n / 2 + 1));
    }
  }
  if (command == "compare") {
    static const std::set<std::string> kinds{"standard", "induced", "negative", "all"};
    if (!kinds.count(e.sandwich)) fail(fmt::format("unknown experiment.sandwich '{}'", e.sandwich));
    if (e.sandwich == "induced" && rs.kind == "su2_irrep") fail("the induced comparison is not available on SU2");
    if (e.sandwich == "negative" && !rs.norm.is_hermitian()) fail("the negative sandwich needs a Hermitian norm");
    if (!(e.epsilon > 0.0)) fail(fmt::format("experiment.epsilon must be positive, got {}", e.epsilon));
    if (e.ensemble_size == 0 && !e.vector) fail("compare needs ensemble_size > 0 or an explicit vector");
  }
  if (command == "norms") {
    for (const auto& f : e.families) (void)norm_family_from_string(f);
  }
}

}  // namespace sobrep
