#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "sobrep/sobolev.hpp"

using namespace sobrep;

namespace {

Eigen::VectorXcd mode(const Representation& r, int q, int N) { return Eigen::VectorXcd::Unit(r.dim(), q + N); }

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// bump and its derivatives, u = 1 - x^2
double b0(double x) { return std::abs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0; }
double b1(double x) {
  const double u = 1.0 - x * x;
  return std::abs(x) < 1.0 ? b0(x) * (-2.0 * x / (u * u)) : 0.0;
}
double b2(double x) {
  const double u = 1.0 - x * x;
  return std::abs(x) < 1.0 ? b0(x) * (4.0 * x * x / std::pow(u, 4) - 2.0 / (u * u) - 8.0 * x * x / std::pow(u, 3)) : 0.0;
}

Eigen::VectorXcd random_vector(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

}  // namespace

TEST(Sobolev, StandardOnTorusModes) {
  const int N = 5;
  const auto r = Representation::torus_regular(N);
  for (int k = 0; k <= 3; ++k) {
    const StandardSobolev p(r, k);
    for (int q = -N; q <= N; ++q) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += std::pow(q * q, j);
      EXPECT_NEAR(p(mode(r, q, N)), std::sqrt(s), 1e-10 * std::sqrt(s));
    }
  }
}

TEST(Sobolev, StandardOrderOneOnSpin) {
  // p_1(v)^2 = |v|^2 + sum |D_j v|^2 = (1 + l(l+1)) |v|^2
  for (double l : {0.5, 1.0, 2.5}) {
    const auto r = Representation::su2_irrep(l);
    const Eigen::VectorXcd v = random_vector(r.dim(), 4);
    EXPECT_NEAR(standard_sobolev(r, v, 1), std::sqrt(1.0 + l * (l + 1)) * v.norm(), 1e-12);
  }
}

TEST(Sobolev, StandardGram) {
  const auto r = Representation::su2_irrep(1.0);
  const StandardSobolev p(r, 2);
  const Eigen::VectorXcd v = random_vector(3, 5);
  EXPECT_NEAR(std::sqrt((v.adjoint() * p.gram() * v)(0).real()), p(v), 1e-10);
  EXPECT_EQ(p.monomial_matrices().size(), 10u);
}

TEST(Sobolev, LaplaceFractionalOnModes) {
  const int N = 4;
  const auto r = Representation::torus_regular(N);
  for (double s : {-1.5, 0.5, 1.0, 3.0}) {
    for (int q = -N; q <= N; ++q) {
      EXPECT_NEAR(laplace_sobolev(r, mode(r, q, N), s, 1.3), std::pow(1.69 + q * q, s / 2), 1e-12);
    }
  }
  EXPECT_NEAR(laplace_sobolev_even(r, mode(r, 3, N), 4, 1.3), std::pow(1.69 + 9.0, 2), 1e-10);
}

TEST(Sobolev, LaplaceOnSpin) {
  const auto r = Representation::su2_irrep(2.0);
  const Eigen::VectorXcd v = random_vector(5, 6);
  for (double s : {0.5, 2.0, 3.0}) {
    EXPECT_NEAR(laplace_sobolev(r, v, s, 1.0), std::pow(7.0, s / 2) * v.norm(), 1e-10);
  }
}

TEST(Sobolev, LaplacePowerFailures) {
  Eigen::MatrixXcd J(2, 2);
  J << 1.0, 1.0, 0.0, 1.0;
  const auto jordan = Representation::euclidean_matrix({J});
  try {
    laplace_power(jordan, 1.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::defective_matrix);
  }
  const auto scalar = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 2.0)});
  try {
    laplace_power(scalar, 1.0, 1.0);  // R^2 - 4 < 0
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::branch_cut);
  }
  EXPECT_LT((laplace_power(jordan, 0.0, 2.0).matrix - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-15);
}

TEST(Sobolev, NegativeOnModes) {
  const int N = 4;
  const auto r = Representation::torus_regular(N);
  for (int k = 0; k <= 3; ++k) {
    for (int q = -N; q <= N; ++q) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += std::pow(q * q, j);
      EXPECT_NEAR(negative_sobolev(r, mode(r, q, N), k), 1.0 / std::sqrt(s), 1e-12);
    }
  }
  const DualSobolev dl = DualSobolev::laplace(r, 2, 1.0);
  for (int q = -N; q <= N; ++q) EXPECT_NEAR(dl(mode(r, q, N)), 1.0 / (1.0 + q * q), 1e-12);
}

TEST(Sobolev, NegativeIsDualBallSup) {
  std::mt19937 rng(9);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd A = random_vector(9, 7).reshaped(3, 3);
  const Eigen::MatrixXcd S = A.adjoint() * A + 0.5 * Eigen::MatrixXcd::Identity(3, 3);
  const auto r = Representation::su2_irrep(1.0, VectorNorm::hermitian(S));
  const DualSobolev d = DualSobolev::standard(r, 2);
  const Eigen::VectorXcd v = random_vector(3, 8);
  const double exact = d(v);
  double best = 0.0;
  for (int i = 0; i < 20000; ++i) {
    Eigen::VectorXcd l(3);
    for (int c = 0; c < 3; ++c) l(c) = Complex(g(rng), g(rng));
    const double q = std::abs(l.cwiseProduct(v).sum()) / d.dual_norm(l);
    EXPECT_LE(q, exact * (1 + 1e-10));
    best = std::max(best, q);
  }
  EXPECT_GT(best, 0.95 * exact);
}

TEST(Sobolev, NegativeNonHermitian) {
  const auto r = Representation::torus_regular(3, 1, VectorNorm(NormKind::l1));
  const Eigen::VectorXcd v = random_vector(7, 10);
  EXPECT_NEAR(negative_sobolev(r, v, 0), VectorNorm(NormKind::l1)(v), 1e-12);
  try {
    negative_sobolev(r, v, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(Sobolev, IntegerOrderDispatch) {
  const auto r = Representation::torus_regular(3);
  const Eigen::VectorXcd v = random_vector(7, 11);
  EXPECT_EQ(integer_sobolev(r, v, 2), standard_sobolev(r, v, 2));
  EXPECT_EQ(integer_sobolev(r, v, -1), negative_sobolev(r, v, 1));
}

TEST(Sobolev, InducedOrderZeroIsBumpL2) {
  const double l2 = std::sqrt(simpson([](double x) { return b0(x) * b0(x); }, -1.0, 1.0, 20000));
  const auto r = Representation::torus_regular(3);
  for (int q : {-3, 0, 2}) EXPECT_NEAR(induced_sobolev(r, mode(r, q, 3), 0.0), l2, 1e-8);
}

TEST(Sobolev, InducedOrderTwoOfConstant) {
  // |b|_{H^2}^2 = int b^2 + 2 b'^2 + b''^2
  const double h2 = std::sqrt(simpson([](double x) { return b0(x) * b0(x) + 2 * b1(x) * b1(x) + b2(x) * b2(x); },
                                      -1.0, 1.0, 200000));
  const auto r = Representation::torus_regular(3);
  EXPECT_NEAR(induced_sobolev(r, mode(r, 0, 3), 2.0) / h2, 1.0, 1e-6);
}

TEST(Sobolev, InducedMonotoneAndOperatorAgrees) {
  const auto r = Representation::torus_regular(4);
  const Eigen::VectorXcd v = random_vector(9, 12);
  const InducedSobolev sp(r, v);
  const InducedOperator op(r);
  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.5}) {
    const double x = sp.value(s);
    EXPECT_GE(x, prev);
    EXPECT_NEAR(op.value(v, s), x, 1e-12 * x);
    prev = x;
  }
  // gradient = 2 dSp / d conj(v): d Sp along w is Re(gradient^* w)
  Eigen::VectorXcd grad;
  const double f0 = op.value(v, 1.0, &grad);
  const Eigen::VectorXcd w = random_vector(9, 13);
  const double h = 1e-6;
  const double fd = (op.value(v + h * w, 1.0) - op.value(v - h * w, 1.0)) / (2 * h);
  EXPECT_NEAR(fd, grad.dot(w).real(), 1e-6 * f0);
}

TEST(Sobolev, InducedRejectsSu2) {
  const auto r = Representation::su2_irrep(1.0);
  try {
    induced_sobolev(r, random_vector(3, 14), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(Sobolev, EvaluateNorm) {
  const auto r = Representation::torus_regular(3);
  const Eigen::VectorXcd v = mode(r, 2, 3);
  EXPECT_NEAR(evaluate_norm(r, v, NormFamily::laplace, 2.0, 1.0).value, 5.0, 1e-12);
  EXPECT_NEAR(evaluate_norm(r, v, NormFamily::negative, 1.0).value, 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(evaluate_norm(r, v, NormFamily::negative, 1.0).order, -1.0);
  EXPECT_THROW(evaluate_norm(r, v, NormFamily::standard, 1.5), Error);
  EXPECT_EQ(norm_family_from_string(to_string(NormFamily::induced)), NormFamily::induced);
}
