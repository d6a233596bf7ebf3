#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/group_model.hpp"

namespace sobrep {

using Complex = std::complex<double>;

/// Spectral data of a function on a model group.
///
/// Torus / Euclidean: Fourier coefficients a_k in FFT order, with
///   phi(x) = sum_k a_k exp(i xi_k . x).
/// SU2: blocks F(j) = int phi(g) pi_j(g)^* dg for two_j = 0..2*band, with
///   phi(g) = (1/V) sum_j d_j tr(F(j) pi_j(g)).
struct SpectralData {
  Eigen::VectorXcd fourier;
  std::vector<Eigen::MatrixXcd> blocks;
};

SpectralData forward_transform(const GroupModel& model, const Eigen::VectorXcd& values);
Eigen::VectorXcd inverse_transform(const GroupModel& model, const SpectralData& spectral);

/// Function sampled at the quadrature nodes of a model, optionally carrying
/// spectral coefficients.  When present the spectral data is authoritative
/// for spectral operations (convolution, multipliers).
class GroupFunction {
 public:
  GroupFunction(ModelPtr model, Eigen::VectorXcd values,
                std::optional<SpectralData> spectral = std::nullopt);

  static GroupFunction from_function(const ModelPtr& model,
                                     const std::function<Complex(const Eigen::VectorXd&)>& f);
  /// Nodal values are synthesized from the coefficients.
  static GroupFunction from_spectral(const ModelPtr& model, SpectralData spectral);

  const ModelPtr& model() const noexcept { return model_; }
  const Eigen::VectorXcd& values() const noexcept { return values_; }
  bool has_spectral() const noexcept { return spectral_.has_value(); }
  /// Stored spectral data, or the forward transform of the nodal values.
  SpectralData spectral() const;

  /// Value at an arbitrary element.  Uses the spectral expansion (exact for
  /// band-limited functions); returns the nodal value when coords is a node.
  Complex evaluate(const Eigen::VectorXd& coords) const;

 private:
  ModelPtr model_;
  Eigen::VectorXcd values_;
  std::optional<SpectralData> spectral_;
};

/// Relative sup-norm size of the part of phi outside the model's band
/// (Nyquist modes on grids, spins above the band on SU2).
double band_excess(const GroupFunction& phi);

/// phi -> m(Delta) phi via the spectral multiplier m(lambda) on Laplace eigenvalues.
GroupFunction apply_multiplier(const GroupFunction& phi, const std::function<double(double)>& m);

enum class ConvolutionPath { spectral, quadrature };

/// Left convolution (phi * psi)(g) = int phi(x) psi(x^{-1} g) dx.
/// Throws Error{model_mismatch}.
GroupFunction convolve(const GroupFunction& phi, const GroupFunction& psi,
                       ConvolutionPath path = ConvolutionPath::spectral);

/// Exponential decay rate of |phi| fitted on the outer half of a Euclidean box
/// (+inf if phi vanishes there; +inf on compact models).
double fitted_decay_rate(const GroupFunction& phi);

struct WeightedNorm {
  double value = 0.0;
  bool converged = true;
  double decay_rate = 0.0;
};

/// Quadrature of |phi| exp(R d(g)).  On Euclidean models converged is false
/// when the fitted decay rate of phi does not exceed R.
WeightedNorm weighted_L1_norm(const GroupFunction& phi, double R);

struct IntegrabilityWitness {
  double c_G = 0.0;
  double C = 0.0;
  double integral = 0.0;
};

/// c_G (0 for every included model) with the quadrature witness int exp(-C d(g)) dg.
IntegrabilityWitness c_G(const GroupModel& model, double C);

/// CSV rows: node coordinates..., real, imag.
void write_csv(std::ostream& os, const GroupFunction& phi);
GroupFunction read_csv(std::istream& is, const ModelPtr& model);

}  // namespace sobrep
