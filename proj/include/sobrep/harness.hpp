#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/representation.hpp"
#include "sobrep/sobolev.hpp"
#include "sobrep/spectral.hpp"

namespace sobrep {

struct Ensemble {
  std::vector<Eigen::VectorXcd> vectors;
  std::vector<std::string> labels;
};

/// `random_count` complex Gaussian vectors normalized to p(v) = 1 plus the
/// eigenvectors of d pi(Delta) with smallest and largest |eigenvalue|.
Ensemble make_ensemble(const Representation& rep, int random_count = 64, std::uint64_t seed = 20240601);

/// Every standard basis vector, normalized.
Ensemble basis_ensemble(const Representation& rep);

struct GapReport {
  double R = 0.0;
  double c_pi = 0.0;
  double c_G = 0.0;
  double R_E = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool invertible = false;
  bool above_threshold = false;
};

/// sigma_min(R^2 I + d pi(Delta)) against R_E = c_pi + c_G.
GapReport spectral_gap(const Representation& rep, double R);

/// Smallest even integer >= 1 + n.
int sandwich_shift(int n);

struct FactorizationReport {
  double residual = 0.0;
  double R = 0.0;
  int m = 0;
  double R_E = 0.0;
  double kernel_tail = 0.0;
};

/// ||v - Pi(kappa) d pi((R^2 + Delta)^m) v|| / ||v||.  Throws
/// Error{below_growth_threshold} when R <= R_E and Error{invalid_argument}
/// when 2m - n - 1 < 0.
FactorizationReport vector_factorization_residual(const Representation& rep, const Eigen::VectorXcd& v, double R,
                                                  int m);

struct SandwichReport {
  std::string family;
  double order = 0.0;
  double R = 0.0;
  int shift = 0;
  std::size_t ensemble_size = 0;
  double lower = 0.0;  // min over the ensemble
  double upper = 0.0;  // max over the ensemble
  std::vector<double> lower_ratios;
  std::vector<double> upper_ratios;
  std::vector<std::string> labels;
  Eigen::Index dimension = 0;
};

/// lower = min p_{2k} / Delta p_{2k}, upper = max p_{2k} / Delta p_{2k+m}.
SandwichReport sandwich_report(const Representation& rep, int k, double R, const Ensemble& ensemble);

/// lower = min Delta p_s / Sp_s, upper = max Delta p_s / Sp_{s+n/2+eps}.
/// With `refine` (Hermitian norms) each extreme is pushed further by
/// gradient ascent on the ratio from the best ensemble members; the
/// resulting vectors join the ensemble as "ascent-lower" / "ascent-upper".
SandwichReport compare_induced(const Representation& rep, double s, double epsilon, const Ensemble& ensemble,
                               double R = 1.0, const InducedOptions& opts = {}, bool refine = true);

/// lower = min Delta p_{-k} / p_{-k}, upper = max Delta p_{-k} / p_{-k+n+1}.
/// Needs a Hermitian norm.
SandwichReport negative_sandwich(const Representation& rep, int k, double R, const Ensemble& ensemble);

struct RatioPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// min / max of p_{k,B}(v) / p_{k,C}(v) where C_a = sum_b T(a, b) X_b.
RatioPair basis_stress(const Representation& rep, int k, const Eigen::MatrixXd& transform, const Ensemble& ensemble);

struct Stability {
  double lower_spread = 0.0;  // (max - min) / min of the lower ratios
  double upper_spread = 0.0;
};

Stability stability(const std::vector<SandwichReport>& reports);

}  // namespace sobrep
