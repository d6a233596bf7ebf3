#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sobrep/spectral.hpp"

using namespace sobrep;
constexpr double kPi = std::numbers::pi;

namespace {

Eigen::VectorXd at(double x) { return Eigen::VectorXd::Constant(1, x); }

}  // namespace

TEST(Spectral, SymbolValues) {
  const auto f = SpectralFunction::resolvent_power(2.0, 3);
  EXPECT_DOUBLE_EQ(f(1.0), std::pow(5.0, -3));
  EXPECT_DOUBLE_EQ(f.at_eigenvalue(4.0), std::pow(8.0, -3));
  EXPECT_EQ(f.order(), -6.0);
  EXPECT_THROW(SpectralFunction::resolvent_power(0.0, 1), Error);
  EXPECT_THROW(SpectralFunction::resolvent_power(1.0, 0), Error);
  EXPECT_THROW(SpectralFunction::resolvent_power(1.0, 1, 0.5), Error);
}

TEST(Spectral, EuclideanKernelClosedForms) {
  for (double R : {0.5, 1.0, 2.0}) {
    for (double r : {0.05, 0.7, 3.0, 11.0}) {
      EXPECT_NEAR(euclidean_kernel(1, R, 1, r) / (std::exp(-R * r) / (2 * R)), 1.0, 1e-12);
      EXPECT_NEAR(euclidean_kernel(1, R, 2, r) / ((1 + R * r) * std::exp(-R * r) / (4 * R * R * R)), 1.0, 1e-12);
      EXPECT_NEAR(euclidean_kernel(3, R, 1, r) / (std::exp(-R * r) / (4 * kPi * r)), 1.0, 1e-12);
      EXPECT_NEAR(euclidean_kernel(3, R, 2, r) / (std::exp(-R * r) / (8 * kPi * R)), 1.0, 1e-12);
    }
    EXPECT_NEAR(euclidean_kernel(1, R, 1, 0.0), 1.0 / (2 * R), 1e-14);
    EXPECT_NEAR(euclidean_kernel(3, R, 2, 0.0), 1.0 / (8 * kPi * R), 1e-14);
  }
}

TEST(Spectral, TorusKernelClosedForm) {
  const double R = 2.0;
  const Kernel k = kernel(GroupModel::torus(1, 64), SpectralFunction::resolvent_power(R, 1));
  for (double t : {0.0, 0.4, 1.9, kPi, -2.5}) {
    const double exact = std::cosh(R * (kPi - std::abs(t))) / (2 * R * std::sinh(R * kPi));
    EXPECT_NEAR(kernel_value(k, at(t)), exact, 1e-12);
  }
  EXPECT_LT(k.tail, 1e-12);
}

TEST(Spectral, TorusKernelAgainstFourierSeries) {
  const Kernel k = kernel(GroupModel::torus(1, 32), SpectralFunction::resolvent_power(1.0, 2));
  for (double t : {0.0, 1.0, 2.5}) {
    double s = 0.0;
    for (int q = -20000; q <= 20000; ++q) s += std::cos(q * t) / std::pow(1.0 + q * q, 2);
    EXPECT_NEAR(kernel_value(k, at(t)), s / (2 * kPi), 1e-12);
  }
}

TEST(Spectral, Torus2KernelAgainstFourierSeries) {
  const Kernel k = kernel(GroupModel::torus(2, 16), SpectralFunction::resolvent_power(1.0, 2));
  const Eigen::Vector2d x(0.3, -1.1);
  double s = 0.0;
  const int K = 1500;
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b) s += std::cos(a * x(0) + b * x(1)) / std::pow(1.0 + a * a + b * b, 2);
  EXPECT_NEAR(kernel_value(k, x), s / (4 * kPi * kPi), 1e-7);
}

TEST(Spectral, Su2BandLimitedKernelIsCharacterSum) {
  // kappa(g) = (1/V) sum_j d_j f_j chi_j(g), spins up to the band
  const auto m = GroupModel::su2(6);
  const Kernel k = kernel(m, SpectralFunction::resolvent_power(1.0, 2));
  const auto series = [](double w) {
    double s = 0.0;
    for (int tj = 0; tj <= 12; ++tj) {
      const double j = 0.5 * tj;
      const double chi = std::abs(std::sin(w)) < 1e-12 ? tj + 1.0 : std::sin((tj + 1) * w) / std::sin(w);
      s += (tj + 1) * chi / std::pow(1.0 + j * (j + 1), 2);
    }
    return s / (16 * kPi * kPi);
  };
  EXPECT_NEAR(kernel_value(k, Eigen::Vector3d::Zero()), series(0.0), 1e-12);
  for (std::size_t i : {std::size_t{0}, m->identity_node(), m->node_count() / 2}) {
    const Eigen::VectorXd x = m->node(i);
    const double w = su2::half_angle(su2::matrix({x(0), x(1), x(2)}));
    EXPECT_NEAR(k.values.values()(static_cast<Eigen::Index>(i)).real(), series(w), 1e-12);
  }
  EXPECT_EQ(k.l_max, 6.0);
  EXPECT_TRUE(std::isinf(kernel(m, SpectralFunction::resolvent_power(1.0, 1)).tail));
}

TEST(Spectral, UnboundedKernelRejected) {
  try {
    kernel(GroupModel::torus(2, 16), SpectralFunction::resolvent_power(1.0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(Spectral, Cutoff) {
  EXPECT_EQ(cutoff(0.0, 1.0), 1.0);
  EXPECT_EQ(cutoff(0.5, 1.0), 1.0);
  EXPECT_EQ(cutoff(1.0, 1.0), 0.0);
  EXPECT_EQ(cutoff(3.0, 1.0), 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = cutoff(0.5 + 0.005 * i, 1.0);
    EXPECT_LE(c, prev);
    EXPECT_GE(c, 0.0);
    prev = c;
  }
}

TEST(Spectral, SplitSumsToKernel) {
  const auto model = GroupModel::euclidean(1, 30.0, 4096);
  const Kernel k = kernel(model, SpectralFunction::resolvent_power(1.0, 1));
  const CgtSplit s = cgt_split(k, 1.5);
  for (double x : {0.0, 0.3, 0.9, 1.2, 4.0}) {
    EXPECT_NEAR(s.local_at(at(x)) + s.tail_at(at(x)), 0.5 * std::exp(-x), 1e-14);
  }
  EXPECT_EQ(s.local_at(at(1.6)), 0.0);
  EXPECT_EQ(s.tail_at(at(0.7)), 0.0);
  EXPECT_LT((s.local.values() + s.tail.values() - k.values.values()).norm(), 1e-13);
  EXPECT_THROW(cgt_split(kernel(GroupModel::torus(1, 32), SpectralFunction::resolvent_power(1.0, 1)), 4.0), Error);
}

TEST(Spectral, Diagnostics) {
  const auto model = GroupModel::euclidean(1, 40.0, 8192);
  const HolderFit h = holder_exponent([](const Eigen::VectorXd& x) { return std::sqrt(std::abs(x(0))); }, *model);
  EXPECT_NEAR(h.alpha, 0.5, 1e-6);
  EXPECT_FALSE(h.saturated);
  const HolderFit smooth = holder_exponent([](const Eigen::VectorXd& x) { return std::cos(x(0)); }, *model);
  EXPECT_TRUE(smooth.saturated);
  const DerivativeJumps j = derivative_jumps([](const Eigen::VectorXd& x) { return std::abs(x(0)); }, *model);
  EXPECT_NEAR(j.first, 2.0, 1e-9);
  EXPECT_NEAR(j.second, 0.0, 1e-6);
  const auto phi = GroupFunction::from_function(model, [](const Eigen::VectorXd& x) { return Complex(std::exp(-3 * std::abs(x(0)))); });
  EXPECT_NEAR(tail_decay_rate(phi, 2.0, 8.0).rate, 3.0, 1e-6);
  const auto on_torus = GroupFunction::from_function(GroupModel::torus(1, 8), [](const Eigen::VectorXd&) { return Complex(1.0); });
  EXPECT_THROW(tail_decay_rate(on_torus), Error);
}

TEST(Spectral, DeltaFactorizationAndBandCheck) {
  const auto t = GroupModel::torus(1, 32);
  const auto f = SpectralFunction::resolvent_power(1.5, 2);
  const auto poly = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) {
    return Complex(std::cos(3 * x(0)) - 0.5 * std::sin(7 * x(0)) + 0.2);
  });
  EXPECT_LT(delta_factorization_residual(t, f, poly), 1e-11);
  const auto nyq = GroupFunction::from_function(t, [](const Eigen::VectorXd& x) { return Complex(std::cos(16 * x(0))); });
  try {
    delta_factorization_residual(t, f, nyq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::band_limit_exceeded);
  }
}
