#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/enveloping.hpp"
#include "sobrep/group_function.hpp"
#include "sobrep/group_model.hpp"

namespace sobrep {

enum class NormKind { l1, l2, linf, hermitian };

std::string to_string(NormKind kind);
NormKind norm_kind_from_string(const std::string& s);

/// Defining norm p of a finite-dimensional representation space.  Linear
/// functionals act by the bilinear pairing lambda(v) = sum_i lambda_i v_i.
class VectorNorm {
 public:
  VectorNorm() = default;
  explicit VectorNorm(NormKind kind);
  /// p(v)^2 = v^* S v.  Throws unless S is Hermitian positive definite.
  static VectorNorm hermitian(const Eigen::MatrixXcd& gram);

  NormKind kind() const noexcept { return kind_; }
  const Eigen::MatrixXcd& gram() const noexcept { return gram_; }
  /// Hermitian norms (l2 included) admit the Gram route.
  bool is_hermitian() const noexcept { return kind_ == NormKind::l2 || kind_ == NormKind::hermitian; }
  /// Gram matrix for Hermitian kinds (identity of size n for l2).
  Eigen::MatrixXcd gram_of_size(Eigen::Index n) const;

  double operator()(const Eigen::VectorXcd& v) const;
  /// Dual norm p'(lambda) = sup_{p(v) <= 1} |lambda(v)|.
  double dual(const Eigen::VectorXcd& lambda) const;
  /// Operator norm sup_{p(v) <= 1} p(A v): l2 largest singular value, l1/linf
  /// column/row sums, Hermitian via the Cholesky factor.
  double operator_norm(const Eigen::MatrixXcd& a) const;

 private:
  NormKind kind_ = NormKind::l2;
  Eigen::MatrixXcd gram_;
  Eigen::MatrixXcd chol_upper_;  // S = U^* U
};

/// Finite-dimensional (or exactly truncated) representation given by its
/// derived generators D_j = d pi(X_j) on a model group.
class Representation {
 public:
  /// Validates sizes and ||[D_i, D_j] - sum_k c_ijk D_k||_F <= 1e-10.
  Representation(ModelPtr model, std::vector<Eigen::MatrixXcd> generators, VectorNorm norm,
                 std::string name = "custom");

  /// Left regular representation of T^n on Fourier modes |k|_inf <= N,
  /// D_j = diag(-i k_j).  nodes_per_axis = 0 picks 4(N+1).
  static Representation torus_regular(int N, int n = 1, VectorNorm norm = VectorNorm(NormKind::l2),
                                      int nodes_per_axis = 0);
  /// Spin-l irreducible representation (l integer or half integer) on an
  /// SU2 model of the given band (0 picks max(12, ceil(l))).
  static Representation su2_irrep(double l, VectorNorm norm = VectorNorm(NormKind::l2), int band = 0);
  /// Representation of R^n with commuting generator matrices A_1..A_n.
  static Representation euclidean_matrix(std::vector<Eigen::MatrixXcd> matrices,
                                         VectorNorm norm = VectorNorm(NormKind::l2),
                                         double half_width = 48.0, int nodes_per_axis = 65536);

  Representation with_model(ModelPtr model) const;
  Representation with_norm(VectorNorm norm) const;

  const ModelPtr& model() const noexcept { return model_; }
  const AlgebraPtr& algebra() const noexcept { return model_->algebra(); }
  Eigen::Index dim() const noexcept { return dim_; }
  int n() const noexcept { return static_cast<int>(generators_.size()); }
  const std::vector<Eigen::MatrixXcd>& generators() const noexcept { return generators_; }
  const VectorNorm& norm() const noexcept { return norm_; }
  const std::string& name() const noexcept { return name_; }
  bool diagonal_generators() const noexcept { return diagonal_; }
  /// Largest bracket-compatibility residual found at construction.
  double bracket_residual() const noexcept { return bracket_residual_; }

 private:
  ModelPtr model_;
  std::vector<Eigen::MatrixXcd> generators_;
  VectorNorm norm_;
  std::string name_;
  Eigen::Index dim_ = 0;
  bool diagonal_ = false;
  double bracket_residual_ = 0.0;
};

/// d pi(u) = sum over PBW terms of coefficient times ordered generator powers.
Eigen::MatrixXcd d_pi(const Representation& rep, const EnvelopingElement& u);
/// d pi(u) v without forming the matrix.
Eigen::VectorXcd d_pi_apply(const Representation& rep, const EnvelopingElement& u, const Eigen::VectorXcd& v);

/// pi(exp(sum_j x_j X_j)) = exp(sum_j x_j D_j).
Eigen::MatrixXcd pi(const Representation& rep, const Eigen::VectorXd& exp_coords);
/// pi at a quadrature node of the representation's model (Euler product on SU2).
Eigen::MatrixXcd pi_at_node(const Representation& rep, std::size_t node);

struct GrowthEstimate {
  double c_pi = 0.0;
  double C = 1.0;
  /// (distance, log ||pi(g)||) pairs.
  std::vector<std::pair<double, double>> samples;
  double t_max = 0.0;
  bool overflow_reduced = false;
};

/// Fits the exponential growth rate of w_pi(g) = ||pi(g)|| along one-parameter
/// subgroups exp(t u), t in (0, t_max], over n_dirs unit directions.
GrowthEstimate growth_rate(const Representation& rep, int n_dirs = 8, double t_max = 200.0,
                           std::uint64_t seed = 7);

/// Pi(phi) v = int phi(g) pi(g) v dg by quadrature on the representation's
/// model.  On Euclidean models the fitted decay rate of phi must exceed c_pi
/// (computed with growth_rate when not supplied); otherwise Error{divergence}.
Eigen::VectorXcd smearing(const Representation& rep, const GroupFunction& phi, const Eigen::VectorXcd& v,
                          std::optional<double> c_pi = std::nullopt);

/// Distance d(exp(sum x_j X_j)) on the model.
double exp_distance(const GroupModel& model, const Eigen::VectorXd& exp_coords);

}  // namespace sobrep
