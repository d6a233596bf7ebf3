#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sobrep/group_function.hpp"

using namespace sobrep;
constexpr double kPi = std::numbers::pi;

TEST(GroupFunction, TorusCoefficients) {
  const auto t = GroupModel::torus(1, 32);
  const auto phi = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return Complex(std::cos(3 * x(0))); });
  const auto s = phi.spectral();
  EXPECT_NEAR(std::abs(s.fourier(3) - 0.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.fourier(29) - 0.5), 0.0, 1e-14);
  EXPECT_NEAR(s.fourier.norm(), std::sqrt(0.5), 1e-14);
  EXPECT_LT((inverse_transform(*t, s) - phi.values()).norm(), 1e-13);
  EXPECT_NEAR(phi.evaluate(Eigen::VectorXd::Constant(1, 0.123)).real(), std::cos(0.369), 1e-13);
}

TEST(GroupFunction, TorusConvolutionOfCharacters) {
  // int e^{ikx} e^{ik(g - x)} dx = 2 pi e^{ikg}
  const auto t = GroupModel::torus(1, 16);
  const auto e3 = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return std::exp(Complex(0, 3 * x(0))); });
  for (auto path : {ConvolutionPath::spectral, ConvolutionPath::quadrature}) {
    const auto c = convolve(e3, e3, path);
    EXPECT_LT((c.values() - 2 * kPi * e3.values()).norm(), 1e-11);
  }
}

TEST(GroupFunction, MultiplierOnTorus) {
  const auto t = GroupModel::torus(1, 16);
  const auto phi = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return Complex(std::cos(2 * x(0))); });
  const auto out = apply_multiplier(phi, [](double l) { return 1.0 + l; });
  EXPECT_LT((out.values() - 5.0 * phi.values()).norm(), 1e-12);
}

TEST(GroupFunction, Su2CharacterHasSingleBlock) {
  const auto g = GroupModel::su2(3);
  const auto chi = GroupFunction::from_function(g, [&](const Eigen::VectorXd& x) {
    return Complex(g->wigner().big_d(2, {x(0), x(1), x(2)}).trace().real());
  });
  const auto s = chi.spectral();
  // int chi_1 pi_1^* = (V / 3) I
  EXPECT_LT((s.blocks[2] - (16 * kPi * kPi / 3) * Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-8);
  EXPECT_LT(s.blocks[0].norm() + s.blocks[1].norm() + s.blocks[4].norm(), 1e-8);
  EXPECT_LT((inverse_transform(*g, s) - chi.values()).norm(), 1e-9);
}

TEST(GroupFunction, Su2Convolution) {
  // chi_j * chi_j = V / d_j chi_j
  const auto g = GroupModel::su2(3);
  const auto chi = GroupFunction::from_function(g, [&](const Eigen::VectorXd& x) {
    return Complex(g->wigner().big_d(1, {x(0), x(1), x(2)}).trace().real());
  });
  const auto c = convolve(chi, chi);
  EXPECT_LT((c.values() - (16 * kPi * kPi / 2) * chi.values()).norm(), 1e-7);
}

TEST(GroupFunction, WeightedNorm) {
  // int e^{-2|x|} e^{|x|} dx = 2
  const auto e = GroupModel::euclidean(1, 30.0, 8192);
  const auto phi = GroupFunction::from_function(e, [](const Eigen::VectorXd& x) { return Complex(std::exp(-2 * std::abs(x(0)))); });
  const WeightedNorm w = weighted_L1_norm(phi, 1.0);
  EXPECT_NEAR(w.value, 2.0, 1e-4);
  EXPECT_TRUE(w.converged);
  EXPECT_NEAR(fitted_decay_rate(phi), 2.0, 1e-6);
  EXPECT_FALSE(weighted_L1_norm(phi, 2.5).converged);
}

TEST(GroupFunction, BandExcessFlagsNyquist) {
  const auto t = GroupModel::torus(1, 8);
  const auto nyq = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return Complex(std::cos(4 * x(0))); });
  const auto ok = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return Complex(std::cos(3 * x(0))); });
  EXPECT_GT(band_excess(nyq), 0.5);
  EXPECT_LT(band_excess(ok), 1e-14);
}

TEST(GroupFunction, CsvRoundTrip) {
  const auto t = GroupModel::torus(1, 8);
  const auto phi = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return Complex(std::sin(x(0)), 1.0); });
  std::stringstream ss;
  write_csv(ss, phi);
  const auto back = read_csv(ss, t);
  EXPECT_LT((back.values() - phi.values()).norm(), 1e-15);
}

TEST(GroupFunction, ModelMismatch) {
  const auto a = GroupFunction::from_function(GroupModel::torus(1, 8), [](const Eigen::VectorXd&) { return Complex(1.0); });
  const auto b = GroupFunction::from_function(GroupModel::torus(1, 16), [](const Eigen::VectorXd&) { return Complex(1.0); });
  try {
    convolve(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::model_mismatch);
  }
}

TEST(GroupFunction, IntegrabilityWitness) {
  const auto w = c_G(*GroupModel::euclidean(1, 30.0, 4096), 1.0);
  EXPECT_EQ(w.c_G, 0.0);
  EXPECT_NEAR(w.integral, 2.0, 1e-3);
}
