#include "sobrep/su2_spin.hpp"

#include <cmath>
#include <numbers>

namespace sobrep::su2 {

using Complex = std::complex<double>;

std::array<Eigen::MatrixXcd, 3> angular_momentum(int two_j) {
  const int d = dimension(two_j);
  const double j = 0.5 * two_j;
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = j - a;
    jz(a, a) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at row a-1.
    if (a > 0) jp(a - 1, a) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  Eigen::MatrixXcd jm = jp.adjoint();
  Eigen::MatrixXcd jx = 0.5 * (jp + jm);
  Eigen::MatrixXcd jy = (jp - jm) / Complex(0.0, 2.0);
  return {jx, jy, jz};
}

std::array<Eigen::MatrixXcd, 3> generators(int two_j) {
  auto j = angular_momentum(two_j);
  const Complex mi(0.0, -1.0);
  return {mi * j[0], mi * j[1], mi * j[2]};
}

Eigen::Matrix2cd matrix(const Euler& e) {
  const Complex i(0.0, 1.0);
  const double cb = std::cos(0.5 * e.beta), sb = std::sin(0.5 * e.beta);
  Eigen::Matrix2cd g;
  g(0, 0) = std::exp(-i * 0.5 * (e.alpha + e.gamma)) * cb;
  g(0, 1) = -std::exp(-i * 0.5 * (e.alpha - e.gamma)) * sb;
  g(1, 0) = std::exp(i * 0.5 * (e.alpha - e.gamma)) * sb;
  g(1, 1) = std::exp(i * 0.5 * (e.alpha + e.gamma)) * cb;
  return g;
}

Euler euler_of(const Eigen::Matrix2cd& g) {
  const Complex a = g(0, 0), b = g(0, 1);
  Euler e;
  e.beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double sum = std::abs(a) > 0.0 ? -2.0 * std::arg(a) : 0.0;   // alpha + gamma
  const double diff = std::abs(b) > 0.0 ? -2.0 * std::arg(-b) : 0.0;  // alpha - gamma
  e.alpha = 0.5 * (sum + diff);
  e.gamma = 0.5 * (sum - diff);
  // The half-angle phases are fixed only up to a sign; repair by comparison.
  if ((matrix(e) - g).norm() > 1e-8) e.alpha += 2.0 * std::numbers::pi;
  return e;
}

double half_angle(const Eigen::Matrix2cd& g) {
  const double c = std::clamp(0.5 * g.trace().real(), -1.0, 1.0);
  return std::acos(c);
}

double character(int two_j, double omega) {
  const double s = std::sin(omega);
  if (std::abs(s) < 1e-8) {
    // Limits at omega = 0 and omega = pi.
    const double sign = (omega > 1.0 && two_j % 2 == 1) ? -1.0 : 1.0;
    return sign * (two_j + 1);
  }
  return std::sin((two_j + 1) * omega) / s;
}

WignerTable::WignerTable(int max_two_j) : max_two_j_(max_two_j) {
  for (int tj = 0; tj <= max_two_j; ++tj) {
    auto jm = angular_momentum(tj);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jm[1]);
    eigvecs_.push_back(es.eigenvectors());
    eigvals_.push_back(es.eigenvalues());
  }
}

Eigen::MatrixXd WignerTable::small_d(int two_j, double beta) const {
  const auto& u = eigvecs_.at(static_cast<std::size_t>(two_j));
  const auto& lam = eigvals_.at(static_cast<std::size_t>(two_j));
  Eigen::VectorXcd phase(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) phase(k) = std::exp(Complex(0.0, -beta * lam(k)));
  Eigen::MatrixXcd d = u * phase.asDiagonal() * u.adjoint();
  return d.real();
}

Eigen::MatrixXcd WignerTable::big_d(int two_j, const Euler& e) const {
  const int d = dimension(two_j);
  Eigen::MatrixXcd out = small_d(two_j, e.beta).cast<Complex>();
  for (int a = 0; a < d; ++a) {
    const double m = 0.5 * two_j - a;
    for (int b = 0; b < d; ++b) {
      const double n = 0.5 * two_j - b;
      out(a, b) *= std::exp(Complex(0.0, -(m * e.alpha + n * e.gamma)));
    }
  }
  return out;
}

}  // namespace sobrep::su2
