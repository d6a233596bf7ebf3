#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sobrep/config.hpp"
#include "sobrep/report_io.hpp"
#include "sobrep/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sobolev norms and smoothing kernels for Lie group representations"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--seed", seed, "RNG seed (overrides experiment.seed)");
  app.add_option("--format", format, "json, csv or both (overrides output.format)")
      ->check(CLI::IsMember({"json", "csv", "both"}));

  const std::pair<const char*, const char*> commands[] = {
      {"norms", "evaluate Sobolev norms of one vector"},
      {"kernel", "kernel of (R^2 + Delta)^{-m} with its local/tail split"},
      {"factorize", "vector factorization residual"},
      {"gap", "smallest singular value of R^2 + d pi(Delta)"},
      {"compare", "norm comparison ratios over an ensemble"},
      {"report-all", "run the acceptance suite"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    sobrep::RunConfig cfg = config_path.empty() ? sobrep::parse_config(nlohmann::json::object())
                                                : sobrep::load_config(config_path);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (!format.empty()) cfg.output.format = format;
    if (seed) cfg.experiment.seed = *seed;

    const sobrep::RunResult result = sobrep::execute(cfg, command);
    for (const auto& line : result.summary) std::cout << line << '\n';
    for (const auto& path : sobrep::write_artifacts(result.artifacts, cfg.output.dir, cfg.output.format)) {
      std::cout << "wrote " << path << '\n';
    }
    return result.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << sobrep::dump_json(sobrep::error_json(e));
    return 2;
  }
}
