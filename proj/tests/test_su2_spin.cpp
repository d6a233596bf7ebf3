#include <gtest/gtest.h>

#include <cmath>

#include "sobrep/su2_spin.hpp"

using namespace sobrep;

TEST(Su2Spin, AngularMomentumAlgebra) {
  const std::complex<double> i(0.0, 1.0);
  for (int two_j = 0; two_j <= 8; ++two_j) {
    const auto J = su2::angular_momentum(two_j);
    const double j = 0.5 * two_j;
    EXPECT_LT((J[0] * J[1] - J[1] * J[0] - i * J[2]).norm(), 1e-12);
    const Eigen::MatrixXcd J2 = J[0] * J[0] + J[1] * J[1] + J[2] * J[2];
    EXPECT_LT((J2 - j * (j + 1) * Eigen::MatrixXcd::Identity(two_j + 1, two_j + 1)).norm(), 1e-11);
    // basis order m = j, ..., -j
    EXPECT_NEAR(J[2](0, 0).real(), j, 1e-15);
  }
}

TEST(Su2Spin, GeneratorsCloseUnderBracket) {
  for (int two_j : {1, 2, 5}) {
    const auto D = su2::generators(two_j);
    EXPECT_LT((D[0] * D[1] - D[1] * D[0] - D[2]).norm(), 1e-12);
    EXPECT_LT((D[1] * D[2] - D[2] * D[1] - D[0]).norm(), 1e-12);
  }
}

TEST(Su2Spin, SpinHalfSmallD) {
  const su2::WignerTable t(4);
  for (double b : {0.0, 0.3, 1.2, 3.0}) {
    const Eigen::MatrixXd d = t.small_d(1, b);
    EXPECT_NEAR(d(0, 0), std::cos(b / 2), 1e-13);
    EXPECT_NEAR(d(0, 1), -std::sin(b / 2), 1e-13);
    EXPECT_NEAR(d(1, 0), std::sin(b / 2), 1e-13);
  }
}

TEST(Su2Spin, CharacterFormula) {
  const su2::WignerTable t(6);
  const su2::Euler e{0.4, 1.1, -0.7};
  const auto g = su2::matrix(e);
  const double w = su2::half_angle(g);
  for (int two_j = 0; two_j <= 6; ++two_j) {
    const double expected = std::sin((two_j + 1) * w) / std::sin(w);
    EXPECT_NEAR(su2::character(two_j, w), expected, 1e-12);
    EXPECT_NEAR(t.big_d(two_j, e).trace().real(), expected, 1e-12);
  }
}

TEST(Su2Spin, EulerRoundTrip) {
  const su2::Euler e{0.9, 0.8, 2.1};
  const auto g = su2::matrix(e);
  EXPECT_LT((su2::matrix(su2::euler_of(g)) - g).norm(), 1e-12);
  EXPECT_NEAR(std::abs(g.determinant()), 1.0, 1e-14);
}
