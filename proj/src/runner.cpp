#include "sobrep/runner.hpp"

#include <fmt/format.h>

#include "sobrep/acceptance.hpp"
#include "sobrep/harness.hpp"
#include "sobrep/spectral.hpp"

namespace sobrep {

using nlohmann::json;

namespace {

Eigen::VectorXcd test_vector(const RunConfig& cfg, const Representation& rep) {
  const auto& e = cfg.experiment;
  if (e.vector) {
    if (e.vector->size() != rep.dim()) {
      throw Error(ErrorCode::config, fmt::format("experiment.vector has {} entries, {} needs {}", e.vector->size(),
                                                 rep.name(), rep.dim()));
    }
    return *e.vector;
  }
  return make_ensemble(rep, 1, e.seed).vectors.front();
}

json rep_json(const Representation& rep) {
  return {{"name", rep.name()},
          {"model", to_string(rep.model()->kind())},
          {"dim", static_cast<std::int64_t>(rep.dim())},
          {"n", rep.n()},
          {"norm", to_string(rep.norm().kind())}};
}

json complex_array(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json::array({v(i).real(), v(i).imag()}));
  return a;
}

RunResult norms(const RunConfig& cfg) {
  const Representation rep = build_representation(cfg);
  const Eigen::VectorXcd v = test_vector(cfg, rep);
  const auto& e = cfg.experiment;
  std::vector<std::string> families = e.families;
  if (families.empty()) {
    families = {"standard", "laplace"};
    if (rep.model()->kind() != GroupKind::su2) families.push_back("induced");
    if (rep.norm().is_hermitian() || e.k == 0) families.push_back("negative");
  }
  RunResult out;
  json list = json::array();
  CsvTable t{{"family", "order", "R", "value"}, {}};
  for (const auto& name : families) {
    const NormFamily f = norm_family_from_string(name);
    const double order = f == NormFamily::standard || f == NormFamily::negative ? e.k : e.s;
    const NormReport r = evaluate_norm(rep, v, f, order, e.R);
    list.push_back(to_json(r));
    t.rows.push_back({to_string(r.family), format_number(r.order), format_number(r.R), format_number(r.value)});
    out.summary.push_back(fmt::format("{:<9} order {:>5g}  {}", name, r.order, format_number(r.value)));
  }
  json j{{"representation", rep_json(rep)}, {"vector", complex_array(v)}, {"p", rep.norm()(v)}, {"norms", list}};
  out.artifacts.push_back({"norms", j, t});
  return out;
}

RunResult kernel_command(const RunConfig& cfg) {
  const ModelPtr model = build_model(cfg);
  const auto& e = cfg.experiment;
  const Kernel k = kernel(model, SpectralFunction::resolvent_power(e.R, e.m));
  const auto& m = *model;
  json j{{"model", to_string(m.kind())},
         {"dim", m.dim()},
         {"R", e.R},
         {"m", e.m},
         {"l_max", k.l_max},
         {"tail", k.tail},
         {"nodes", static_cast<std::uint64_t>(m.node_count())},
         {"value_at_identity", kernel_value(k, Eigen::VectorXd::Zero(m.dim()))}};
  RunResult out;
  const double eps = std::min(1.0, 0.5 * m.injectivity_scale());
  const CgtSplit split = cgt_split(k, eps);
  json cgt{{"epsilon", eps}};
  const HolderFit h = holder_exponent(split.local_at, m);
  cgt["holder_alpha"] = h.alpha;
  cgt["holder_saturated"] = h.saturated;
  const DerivativeJumps d = derivative_jumps(split.local_at, m);
  cgt["first_derivative_jump"] = d.first;
  cgt["second_derivative_jump"] = d.second;
  if (m.kind() == GroupKind::euclidean) {
    const DecayFit fit = tail_decay_rate(split.tail);
    cgt["tail_decay_rate"] = fit.rate;
    cgt["tail_decay_residual"] = fit.residual;
  }
  j["cgt"] = cgt;
  out.summary.push_back(fmt::format("kernel on {} (R={}, m={}): kappa(e) = {}, tail = {}", to_string(m.kind()), e.R,
                                    e.m, format_number(j["value_at_identity"].get<double>()), format_number(k.tail)));

  CsvTable t;
  for (int a = 0; a < m.dim(); ++a) t.header.push_back(fmt::format("x{}", a));
  t.header.insert(t.header.end(), {"kappa", "kappa_local", "kappa_tail"});
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    std::vector<std::string> row;
    const Eigen::VectorXd x = m.node(i);
    for (Eigen::Index a = 0; a < x.size(); ++a) row.push_back(format_number(x(a)));
    const auto idx = static_cast<Eigen::Index>(i);
    row.push_back(format_number(k.values.values()(idx).real()));
    row.push_back(format_number(split.local.values()(idx).real()));
    row.push_back(format_number(split.tail.values()(idx).real()));
    t.rows.push_back(std::move(row));
  }
  out.artifacts.push_back({"kernel", j, t});
  return out;
}

RunResult factorize(const RunConfig& cfg) {
  const Representation rep = build_representation(cfg);
  const Eigen::VectorXcd v = test_vector(cfg, rep);
  const FactorizationReport f = vector_factorization_residual(rep, v, cfg.experiment.R, cfg.experiment.m);
  json j = to_json(f);
  j["representation"] = rep_json(rep);
  CsvTable t{{"representation", "R", "m", "R_E", "residual", "kernel_tail"},
             {{rep.name(), format_number(f.R), std::to_string(f.m), format_number(f.R_E), format_number(f.residual),
               format_number(f.kernel_tail)}}};
  RunResult out;
  out.summary.push_back(fmt::format("{}: residual {} (R = {}, R_E = {})", rep.name(), format_number(f.residual), f.R,
                                    format_number(f.R_E)));
  out.artifacts.push_back({"factorize", j, t});
  return out;
}

RunResult gap(const RunConfig& cfg) {
  const Representation rep = build_representation(cfg);
  std::vector<double> Rs = cfg.experiment.R_values;
  if (Rs.empty()) Rs = {cfg.experiment.R};
  RunResult out;
  json list = json::array();
  CsvTable t{{"R", "c_pi", "c_G", "R_E", "sigma_min", "sigma_max", "invertible", "above_threshold"}, {}};
  for (double R : Rs) {
    const GapReport g = spectral_gap(rep, R);
    list.push_back(to_json(g));
    t.rows.push_back({format_number(g.R), format_number(g.c_pi), format_number(g.c_G), format_number(g.R_E),
                      format_number(g.sigma_min), format_number(g.sigma_max), g.invertible ? "true" : "false",
                      g.above_threshold ? "true" : "false"});
    out.summary.push_back(fmt::format("R = {:<8g} sigma_min = {}  R_E = {}  invertible = {}", R,
                                      format_number(g.sigma_min), format_number(g.R_E), g.invertible));
  }
  out.artifacts.push_back({"gap", json{{"representation", rep_json(rep)}, {"reports", list}}, t});
  return out;
}

RunResult compare(const RunConfig& cfg) {
  const auto& e = cfg.experiment;
  std::vector<std::optional<int>> truncations;
  for (int N : e.truncations) truncations.emplace_back(N);
  if (truncations.empty()) truncations.emplace_back(std::nullopt);
  const bool all = e.sandwich == "all";

  std::map<std::string, std::vector<SandwichReport>> by_kind;
  json reports = json::array();
  json skipped = json::array();
  CsvTable t;
  t.header = {"N", "family", "order", "dimension", "label", "lower_ratio", "upper_ratio"};
  RunResult out;
  for (const auto& N : truncations) {
    const Representation rep = build_representation(cfg, N);
    Ensemble ens = make_ensemble(rep, e.ensemble_size, e.seed);
    if (e.vector) {
      ens.vectors.push_back(test_vector(cfg, rep));
      ens.labels.push_back("config");
    }
    const auto run = [&](const std::string& kind, const auto& fn) {
      if (!all && e.sandwich != kind) return;
      SandwichReport r;
      try {
        r = fn();
      } catch (const Error& err) {
        if (!all || err.code() != ErrorCode::unsupported) throw;
        skipped.push_back({{"kind", kind}, {"reason", err.what()}});
        return;
      }
      json j = to_json(r);
      j["representation"] = rep_json(rep);
      reports.push_back(j);
      const std::string n_text = N ? std::to_string(*N) : "";
      for (auto row : ratios_csv(r).rows) {
        row.insert(row.begin(), n_text);
        t.rows.push_back(std::move(row));
      }
      out.summary.push_back(fmt::format("{:<22} {:<18} order {:>4g}  lower {}  upper {}", rep.name(), r.family,
                                        r.order, format_number(r.lower), format_number(r.upper)));
      by_kind[kind].push_back(std::move(r));
    };
    run("standard", [&] { return sandwich_report(rep, e.k, e.R, ens); });
    if (rep.model()->kind() != GroupKind::su2) {
      run("induced", [&] { return compare_induced(rep, e.s, e.epsilon, ens, e.R); });
    } else if (all) {
      skipped.push_back({{"kind", "induced"}, {"reason", "not available on SU2"}});
    }
    if (rep.norm().is_hermitian()) {
      run("negative", [&] { return negative_sandwich(rep, e.k, e.R, ens); });
    } else if (all) {
      skipped.push_back({{"kind", "negative"}, {"reason", "needs a Hermitian norm"}});
    }
  }
  json stab = json::object();
  if (truncations.size() > 1) {
    for (const auto& [kind, rs] : by_kind) {
      const Stability s = stability(rs);
      stab[kind] = to_json(s);
      out.summary.push_back(fmt::format("stability {:<9} lower spread {:.3f}  upper spread {:.3f}", kind,
                                        s.lower_spread, s.upper_spread));
    }
  }
  out.artifacts.push_back({"compare", json{{"reports", reports}, {"stability", stab}, {"skipped", skipped}}, t});
  return out;
}

RunResult report_all(const RunConfig& cfg) {
  std::vector<int> ids = cfg.experiment.criteria;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  RunResult out;
  json list = json::array();
  CsvTable t{{"id", "name", "pass", "metric", "value"}, {}};
  int passed = 0;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, cfg.experiment.seed);
    out.summary.push_back(summary_line(r));
    list.push_back(to_json(r));
    passed += r.pass ? 1 : 0;
    out.ok = out.ok && r.pass;
    for (const auto& [k, v] : r.metrics) {
      t.rows.push_back({std::to_string(r.id), r.name, r.pass ? "true" : "false", k, format_number(v)});
    }
  }
  out.summary.push_back(fmt::format("{}/{} criteria passed", passed, ids.size()));
  out.artifacts.push_back(
      {"acceptance", json{{"criteria", list}, {"passed", passed}, {"total", ids.size()}, {"seed", cfg.experiment.seed}}, t});
  return out;
}

}  // namespace

RunResult execute(const RunConfig& cfg, const std::string& command) {
  validate(cfg, command);
  if (command == "norms") return norms(cfg);
  if (command == "kernel") return kernel_command(cfg);
  if (command == "factorize") return factorize(cfg);
  if (command == "gap") return gap(cfg);
  if (command == "compare") return compare(cfg);
  return report_all(cfg);
}

json error_json(const std::exception& e) {
  std::string code = "internal";
  if (const auto* err = dynamic_cast<const Error*>(&e)) code = std::string(to_string(err->code()));
  return {{"error", {{"code", code}, {"message", e.what()}}}};
}

}  // namespace sobrep
