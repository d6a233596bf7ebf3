#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sobrep/harness.hpp"

using namespace sobrep;

TEST(Harness, SandwichShift) {
  EXPECT_EQ(sandwich_shift(1), 2);
  EXPECT_EQ(sandwich_shift(2), 4);
  EXPECT_EQ(sandwich_shift(3), 4);
  EXPECT_EQ(sandwich_shift(4), 6);
}

TEST(Harness, EnsembleIncludesTiedExtremes) {
  const auto r = Representation::torus_regular(4);
  const Ensemble e = make_ensemble(r, 10);
  EXPECT_EQ(e.vectors.size(), 13u);
  EXPECT_EQ(std::count_if(e.labels.begin(), e.labels.end(), [](const std::string& s) { return s.rfind("highest", 0) == 0; }), 2);
  EXPECT_EQ(std::count_if(e.labels.begin(), e.labels.end(), [](const std::string& s) { return s.rfind("lowest", 0) == 0; }), 1);
  for (const auto& v : e.vectors) EXPECT_NEAR(r.norm()(v), 1.0, 1e-14);
  EXPECT_EQ(make_ensemble(r, 10).vectors[3], e.vectors[3]);
}

TEST(Harness, GapOnJordanBlock) {
  // d pi(Delta) = -A^2 = 0
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
  A(0, 1) = 1.0;
  const auto r = Representation::euclidean_matrix({A});
  for (double R : {0.3, 2.0}) {
    const GapReport g = spectral_gap(r, R);
    EXPECT_NEAR(g.sigma_min, R * R, 1e-13);
    EXPECT_TRUE(g.invertible);
  }
}

TEST(Harness, GapSharpForScalar) {
  const auto r = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 1.0)});
  const GapReport g = spectral_gap(r, 1.0);
  EXPECT_FALSE(g.invertible);
  EXPECT_NEAR(g.c_pi, 1.0, 1e-9);
  EXPECT_NEAR(spectral_gap(r, 2.0).sigma_min, 3.0, 1e-13);
  EXPECT_THROW(spectral_gap(r, 0.0), Error);
}

TEST(Harness, FactorizationPreconditions) {
  const auto scalar = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 0.5)});
  try {
    vector_factorization_residual(scalar, Eigen::VectorXcd::Ones(1), 0.4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::below_growth_threshold);
  }
  const auto spin = Representation::su2_irrep(1.0);
  try {
    vector_factorization_residual(spin, Eigen::VectorXcd::Ones(3), 1.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
  EXPECT_LT(vector_factorization_residual(spin, Eigen::VectorXcd::Ones(3), 1.0, 2).residual, 1e-10);
}

TEST(Harness, SandwichOrderZero) {
  const auto r = Representation::torus_regular(3);
  const SandwichReport s = sandwich_report(r, 0, 1.0, make_ensemble(r, 8));
  for (double q : s.lower_ratios) EXPECT_NEAR(q, 1.0, 1e-14);
  EXPECT_EQ(s.shift, 2);
}

TEST(Harness, NegativeSandwichOnModes) {
  const int N = 4;
  const auto r = Representation::torus_regular(N);
  const SandwichReport s1 = negative_sandwich(r, 1, 1.0, basis_ensemble(r));
  const SandwichReport s2 = negative_sandwich(r, 2, 1.0, basis_ensemble(r));
  for (int i = 0; i <= 2 * N; ++i) {
    const double q2 = (i - N) * (i - N);
    const auto u = static_cast<std::size_t>(i);
    EXPECT_NEAR(s1.lower_ratios[u], 1.0, 1e-12);
    EXPECT_NEAR(s1.upper_ratios[u], 1.0 / (1.0 + q2), 1e-12);
    EXPECT_NEAR(s2.lower_ratios[u], std::sqrt(1.0 + q2 + q2 * q2) / (1.0 + q2), 1e-12);
    EXPECT_NEAR(s2.upper_ratios[u], 1.0 / (1.0 + q2), 1e-12);
  }
}

TEST(Harness, BasisStress) {
  const int N = 3;
  const auto r = Representation::torus_regular(N);
  const Ensemble e = basis_ensemble(r);
  const RatioPair id = basis_stress(r, 2, Eigen::MatrixXd::Identity(1, 1), e);
  EXPECT_NEAR(id.lower, 1.0, 1e-14);
  EXPECT_NEAR(id.upper, 1.0, 1e-14);
  const RatioPair two = basis_stress(r, 2, 2.0 * Eigen::MatrixXd::Identity(1, 1), e);
  const double q2 = N * N;
  EXPECT_NEAR(two.lower, std::sqrt((1 + q2 + q2 * q2) / (1 + 4 * q2 + 16 * q2 * q2)), 1e-12);
  EXPECT_NEAR(two.upper, 1.0, 1e-14);
  EXPECT_THROW(basis_stress(r, 1, Eigen::MatrixXd::Zero(1, 1), e), Error);
}

TEST(Harness, CompareInducedAppendsAscent) {
  const auto r = Representation::torus_regular(4);
  const Ensemble e = make_ensemble(r, 8);
  const SandwichReport plain = compare_induced(r, 1.0, 0.5, e, 1.0, {}, false);
  const SandwichReport refined = compare_induced(r, 1.0, 0.5, e);
  EXPECT_EQ(plain.ensemble_size, e.vectors.size());
  EXPECT_EQ(refined.ensemble_size, e.vectors.size() + 2);
  EXPECT_EQ(refined.labels.back(), "ascent-upper");
  EXPECT_LE(refined.lower, plain.lower);
  EXPECT_GE(refined.upper, plain.upper);
  for (double q : refined.lower_ratios) EXPECT_GT(q, 0.0);
}

TEST(Harness, StabilitySpreads) {
  SandwichReport a, b;
  a.lower = 1.0;
  a.upper = 2.0;
  b.lower = 1.1;
  b.upper = 1.6;
  const Stability s = stability({a, b});
  EXPECT_NEAR(s.lower_spread, 0.1, 1e-14);
  EXPECT_NEAR(s.upper_spread, 0.25, 1e-14);
}
