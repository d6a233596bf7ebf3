#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "sobrep/lie_algebra.hpp"
#include "sobrep/representation.hpp"
#include "sobrep/sobolev.hpp"

namespace sobrep {

/// Optional group block.  When an algebra is given it must agree with the
/// algebra of the model implied by the representation block.
struct GroupSpec {
  std::optional<std::string> model;  // "torus" | "euclidean" | "su2"
  AlgebraPtr algebra;                // null when not given
  int nodes_per_axis = 0;            // kernel command; 0 = representation default
  double half_width = 0.0;           // kernel command on Euclidean; 0 = default
  int band = 0;                      // kernel command on SU2; 0 = default
};

struct RepresentationSpec {
  std::string kind = "torus_regular";  // | "su2_irrep" | "euclidean_matrix"
  int N = 16;
  int n = 1;
  int nodes_per_axis = 0;
  double spin = 1.0;
  int band = 0;
  std::vector<Eigen::MatrixXcd> matrices;
  double half_width = 48.0;
  VectorNorm norm;
};

struct ExperimentSpec {
  double R = 1.0;
  int m = 1;
  int k = 1;
  double s = 1.0;
  double epsilon = 0.5;
  int ensemble_size = 64;
  std::uint64_t seed = 20240601;
  /// Truncations for torus_regular sweeps (compare); empty = the block's N.
  std::vector<int> truncations;
  /// Extra R values for `gap`; empty = {R}.
  std::vector<double> R_values;
  /// "standard" | "induced" | "negative" | "all" (compare).
  std::string sandwich = "all";
  /// Norm families for `norms`; empty = every family the rep supports.
  std::vector<std::string> families;
  std::optional<Eigen::VectorXcd> vector;
  /// Criteria for report-all; empty = all.
  std::vector<int> criteria;
};

struct OutputSpec {
  std::string dir = "out";
  std::string format = "both";  // json | csv | both
};

struct RunConfig {
  GroupSpec group;
  RepresentationSpec representation;
  ExperimentSpec experiment;
  OutputSpec output;
};

/// Throws Error{config} with the offending key; Error{invalid_algebra} from
/// malformed structure constants.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Representation of the config, optionally at another torus truncation N.
Representation build_representation(const RunConfig& cfg, std::optional<int> N = std::nullopt);

/// Model for the `kernel` command: the representation's model unless the
/// group block overrides the discretization.
ModelPtr build_model(const RunConfig& cfg);

/// Checks the experiment parameters against the preconditions of `command`.
/// Throws Error{config}.
void validate(const RunConfig& cfg, const std::string& command);

}  // namespace sobrep
