#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/lie_algebra.hpp"
#include "sobrep/su2_spin.hpp"

namespace sobrep {

enum class GroupKind { torus, euclidean, su2 };

std::string to_string(GroupKind kind);

/// Model group with a left-invariant metric, Haar (= Riemannian) quadrature,
/// and a spectral transform.
///
/// Coordinates of group elements:
///  - Torus(n):     angles theta in R^n (any representative of R^n / 2 pi Z^n);
///  - Euclidean(n): x in R^n;
///  - SU2:          Euler angles (alpha, beta, gamma).
///
/// Quadrature:
///  - Torus(n):     uniform tensor grid on [0, 2 pi)^n, mass (2 pi)^n;
///  - Euclidean(n): uniform grid on [-L, L)^n;
///  - SU2:          alpha, gamma uniform on [0, 4 pi), Gauss-Legendre in cos(beta);
///                  the (alpha, gamma) range double covers, weights carry the 1/2.
///                  Mass 16 pi^2 (round 3-sphere of radius 2).
class GroupModel {
 public:
  static std::shared_ptr<const GroupModel> torus(int n, int nodes_per_axis);
  static std::shared_ptr<const GroupModel> euclidean(int n, double half_width, int nodes_per_axis);
  /// Euler grid integrating products of matrix coefficients of spin <= band exactly.
  static std::shared_ptr<const GroupModel> su2(int band);

  GroupKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  bool compact() const noexcept { return kind_ != GroupKind::euclidean; }

  std::size_t node_count() const noexcept { return weights_.size(); }
  Eigen::VectorXd node(std::size_t i) const { return nodes_.col(static_cast<Eigen::Index>(i)); }
  const Eigen::MatrixXd& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t identity_node() const noexcept { return identity_node_; }

  /// Total Haar mass; +inf for Euclidean.
  double haar_mass() const noexcept { return haar_mass_; }
  /// Largest radius below which balls around e are embedded (pi, 2 pi, +inf).
  double injectivity_scale() const noexcept;

  /// d(g) = d(g, e).  Throws Error{malformed_coordinates}.
  double distance(const Eigen::VectorXd& coords) const;
  double node_distance(std::size_t i) const { return distances_[i]; }
  const std::vector<double>& node_distances() const noexcept { return distances_; }

  // Torus / Euclidean grid data.
  int nodes_per_axis() const noexcept { return nodes_per_axis_; }
  double half_width() const noexcept { return half_width_; }
  /// Grid origin per axis (0 for the torus, -L for Euclidean).
  double grid_origin() const noexcept { return origin_; }
  double grid_step() const noexcept { return step_; }
  /// Period of the grid: 2 pi (torus) or 2 L (Euclidean box).
  double period() const noexcept { return period_; }
  /// Largest retained Fourier index magnitude per axis (Nyquist excluded).
  int fourier_band() const noexcept { return nodes_per_axis_ / 2 - 1; }
  /// Signed integer Fourier index of flat spectral position `k` along `axis`.
  int signed_index(std::size_t k, int axis) const;
  /// Frequency vector xi for flat spectral position k.
  Eigen::VectorXd frequency(std::size_t k) const;
  bool is_nyquist(std::size_t k) const;

  // SU2 data.
  int su2_band_two_j() const noexcept { return 2 * band_; }
  int su2_band() const noexcept { return band_; }
  int su2_alpha_count() const noexcept { return n_alpha_; }
  int su2_beta_count() const noexcept { return n_beta_; }
  int su2_gamma_count() const noexcept { return n_gamma_; }
  const std::vector<double>& su2_betas() const noexcept { return betas_; }
  const std::vector<double>& su2_beta_weights() const noexcept { return beta_weights_; }
  Eigen::Matrix2cd su2_node_matrix(std::size_t i) const;
  const su2::WignerTable& wigner() const { return *wigner_; }

  /// Laplace eigenvalue attached to spectral position k (torus |k|^2,
  /// Euclidean |xi|^2) or to spin two_j (SU2: j(j+1)).
  double laplace_eigenvalue(std::size_t k) const;

  /// Same model kind and discretization.
  bool same_as(const GroupModel& other) const;

 private:
  GroupModel() = default;
  void finish_grid();

  GroupKind kind_ = GroupKind::torus;
  int dim_ = 0;
  AlgebraPtr algebra_;
  Eigen::MatrixXd nodes_;
  std::vector<double> weights_;
  std::vector<double> distances_;
  std::size_t identity_node_ = 0;
  double haar_mass_ = 0.0;

  int nodes_per_axis_ = 0;
  double half_width_ = 0.0;
  double origin_ = 0.0;
  double step_ = 0.0;
  double period_ = 0.0;

  int band_ = 0;
  int n_alpha_ = 0, n_beta_ = 0, n_gamma_ = 0;
  std::vector<double> betas_, beta_weights_;
  std::shared_ptr<const su2::WignerTable> wigner_;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

/// Half width L with exp(-margin L) < 1e-10, the box size rule for Euclidean
/// models given a kernel decay margin.
double euclidean_half_width(double decay_margin);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace sobrep
