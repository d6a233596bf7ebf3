#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sobrep::su2 {

/// Spins are carried as twice the spin (two_j = 2j) so half-integers are exact.
inline int dimension(int two_j) { return two_j + 1; }
inline double casimir(int two_j) {
  const double j = 0.5 * two_j;
  return j * (j + 1.0);
}

/// Angular momentum matrices J_x, J_y, J_z in the basis |m>, m = j, j-1, ..., -j.
std::array<Eigen::MatrixXcd, 3> angular_momentum(int two_j);

/// Generators D_k = -i J_k.  With X_k = -i sigma_k / 2 these satisfy
/// [D_1, D_2] = D_3 (cyclic), matching the su(2) preset.
std::array<Eigen::MatrixXcd, 3> generators(int two_j);

/// Euler angles (alpha, beta, gamma) with g = exp(alpha X3) exp(beta X2) exp(gamma X3).
struct Euler {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

Eigen::Matrix2cd matrix(const Euler& e);
Euler euler_of(const Eigen::Matrix2cd& g);

/// Rotation angle omega in [0, pi] with tr g = 2 cos(omega).
double half_angle(const Eigen::Matrix2cd& g);

/// Character of the spin-j representation at a group element with half angle omega.
double character(int two_j, double omega);

/// Wigner matrices of all spins up to a bound, computed from cached
/// eigendecompositions of J_y.  Immutable once built.
class WignerTable {
 public:
  explicit WignerTable(int max_two_j);

  int max_two_j() const noexcept { return max_two_j_; }

  /// Real small-d matrix d^j(beta) = exp(-i beta J_y).
  Eigen::MatrixXd small_d(int two_j, double beta) const;

  /// Full D^j(g) = exp(alpha D3) exp(beta D2) exp(gamma D3).
  Eigen::MatrixXcd big_d(int two_j, const Euler& e) const;

 private:
  int max_two_j_;
  std::vector<Eigen::MatrixXcd> eigvecs_;
  std::vector<Eigen::VectorXd> eigvals_;
};

}  // namespace sobrep::su2
