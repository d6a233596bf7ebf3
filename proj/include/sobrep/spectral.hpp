#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/group_function.hpp"
#include "sobrep/group_model.hpp"

namespace sobrep {

/// f(z) = (R^2 + z^2)^{-m}, an even symbol of order -2m.
class SpectralFunction {
 public:
  /// Throws Error{invalid_argument} unless R > 0, m >= 1 and R' > R.
  static SpectralFunction resolvent_power(double R, int m, std::optional<double> R_prime = std::nullopt);

  double R() const noexcept { return R_; }
  int m() const noexcept { return m_; }
  double order() const noexcept { return -2.0 * m_; }
  /// Analyticity margin, informational only.
  double R_prime() const noexcept { return R_prime_; }

  double operator()(double z) const;
  /// f(sqrt(lambda)) for a Laplace eigenvalue lambda >= 0.
  double at_eigenvalue(double lambda) const;

 private:
  double R_ = 1.0;
  double R_prime_ = 1.0;
  int m_ = 1;
};

/// Convolution kernel of f(sqrt(Delta)) on a model.
struct Kernel {
  ModelPtr model;
  SpectralFunction f;
  /// Coefficients of kappa in the model's spectral convention, truncated to
  /// the model band (Fourier: f(|xi|) / mass of the period cell; SU2: f_j I).
  SpectralData coefficients;
  /// Nodal values: exact on torus (lattice sum) and Euclidean (Bessel form);
  /// on SU2 the Peter-Weyl sum truncated at the model band.
  GroupFunction values;
  /// Bound on the neglected lattice tail (torus), or the weighted tail
  /// sum_{l > l_max} (2l+1)^2 f (SU2, +inf when divergent); 0 on Euclidean.
  double tail = 0.0;
  /// Largest retained spin (SU2) or Fourier index per axis (grids).
  double l_max = 0.0;

  /// kappa with the stored coefficients as its spectral data.
  GroupFunction band_limited() const;
  /// Function to smear with: band-limited on compact models, nodal on Euclidean.
  GroupFunction smearing_function() const;
};

/// Throws Error{truncation_budget_exceeded} when the torus lattice sum cannot
/// reach a tail below 1e-12, Error{unsupported} when kappa is unbounded at e
/// (2m <= n on torus or Euclidean models).
Kernel kernel(const ModelPtr& model, const SpectralFunction& f);

/// kappa at arbitrary coordinates (exact form of the model, see Kernel::values).
double kernel_value(const Kernel& k, const Eigen::VectorXd& coords);

/// R^n kernel of (R^2 + |xi|^2)^{-m} at radius r (Bessel potential form).
double euclidean_kernel(int n, double R, int m, double r);

struct CgtSplit {
  double epsilon = 1.0;
  GroupFunction local;  // kappa_1 = chi kappa, supported in B_eps(e)
  GroupFunction tail;   // kappa_2 = (1 - chi) kappa
  /// kappa_1 at arbitrary coordinates.
  std::function<double(const Eigen::VectorXd&)> local_at;
  std::function<double(const Eigen::VectorXd&)> tail_at;
};

/// Smooth cutoff: 1 on [0, eps/2], 0 beyond eps.
double cutoff(double d, double epsilon);

/// kappa = kappa_1 + kappa_2.  Throws Error{invalid_argument} unless
/// 0 < eps < injectivity scale.
CgtSplit cgt_split(const Kernel& k, double epsilon = 1.0);

struct DecayFit {
  double rate = 0.0;
  double residual = 0.0;  // rms of the log fit
  std::size_t samples = 0;
};

/// Least-squares slope of -log|kappa_2| against d over [lo, hi].
/// Throws Error{unsupported} on compact models.
DecayFit tail_decay_rate(const GroupFunction& kappa2, double lo = 5.0, double hi = 30.0);

struct HolderFit {
  double alpha = 0.0;
  /// The second-difference estimator cannot exceed 2.
  bool saturated = false;
  std::vector<std::pair<double, double>> samples;  // (h, |second difference|)
};

/// Local regularity of g at e from second differences at h = 2^{-j},
/// j = 3..10, along the first coordinate axis.
HolderFit holder_exponent(const std::function<double(const Eigen::VectorXd&)>& g, const GroupModel& model);

struct DerivativeJumps {
  double first = 0.0;
  double second = 0.0;
};

/// Jumps of the first two derivatives of g at e along the first axis, from
/// one-sided second-order stencils with step h.
DerivativeJumps derivative_jumps(const std::function<double(const Eigen::VectorXd&)>& g, const GroupModel& model,
                                 double h = 1e-3);

/// sup-norm of phi - [(R^2 + Delta)^m phi] * kappa, Delta acting spectrally.
/// Throws Error{band_limit_exceeded} when phi leaks past the model band.
double delta_factorization_residual(const ModelPtr& model, const SpectralFunction& f, const GroupFunction& phi);

}  // namespace sobrep
