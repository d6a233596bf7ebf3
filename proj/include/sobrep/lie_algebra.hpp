#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/errors.hpp"

namespace sobrep {

class EnvelopingElement;

/// Finite-dimensional real Lie algebra given by structure constants in a
/// basis X_1..X_n that is declared orthonormal for the left-invariant metric.
///
///   [X_i, X_j] = sum_k c(i, j, k) X_k
///
/// Indices are zero-based throughout the C++ API.
class LieAlgebra {
 public:
  /// Validates antisymmetry and the Jacobi identity (tolerance 1e-12).
  /// Throws Error{invalid_algebra} naming the first failing index triple.
  LieAlgebra(int dim, std::vector<double> structure_constants,
             std::vector<std::string> labels = {});

  static std::shared_ptr<const LieAlgebra> abelian(int dim);
  static std::shared_ptr<const LieAlgebra> su2();
  /// Two-dimensional ax+b algebra with basis {X, Y}, [X, Y] = Y.
  static std::shared_ptr<const LieAlgebra> axb();

  int dim() const noexcept { return dim_; }
  double c(int i, int j, int k) const { return c_[index(i, j, k)]; }
  const std::vector<double>& structure_constants() const noexcept { return c_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Matrix of ad X_j: column i holds the coordinates of [X_j, X_i].
  Eigen::MatrixXd ad_matrix(int j) const;
  double trace_ad(int j) const;
  bool is_unimodular(double tol = 1e-12) const;
  bool is_abelian() const;

  /// Largest absolute difference between the two structure-constant tables.
  double distance_to(const LieAlgebra& other) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  void check_index(int j) const;

  int dim_;
  std::vector<double> c_;
  std::vector<std::string> labels_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Laplace element  sum_j (-X_j - tr(ad X_j)) X_j  in PBW form.  For a
/// unimodular algebra this is -sum_j X_j^2.
EnvelopingElement laplace_element(const AlgebraPtr& algebra);

}  // namespace sobrep
