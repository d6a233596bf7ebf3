#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sobrep/group_model.hpp"

using namespace sobrep;
constexpr double kPi = std::numbers::pi;

namespace {

double integrate(const GroupModel& m, const std::function<double(const Eigen::VectorXd&)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.node_count(); ++i) s += m.weights()[i] * f(m.node(i));
  return s;
}

}  // namespace

TEST(GroupModel, TorusQuadrature) {
  const auto t = GroupModel::torus(2, 16);
  EXPECT_NEAR(t->haar_mass(), 4 * kPi * kPi, 1e-12);
  EXPECT_NEAR(integrate(*t, [](const Eigen::VectorXd& x) { return std::pow(std::cos(x(0)), 2); }), 2 * kPi * kPi, 1e-10);
  EXPECT_NEAR(t->injectivity_scale(), kPi, 1e-15);
  EXPECT_EQ(t->fourier_band(), 7);
}

TEST(GroupModel, TorusDistanceWraps) {
  const auto t = GroupModel::torus(1, 8);
  EXPECT_NEAR(t->distance(Eigen::VectorXd::Constant(1, 2 * kPi - 0.5)), 0.5, 1e-14);
  EXPECT_NEAR(t->distance(Eigen::VectorXd::Constant(1, -0.25)), 0.25, 1e-14);
}

TEST(GroupModel, EuclideanGaussian) {
  const auto e = GroupModel::euclidean(1, 12.0, 2048);
  EXPECT_NEAR(integrate(*e, [](const Eigen::VectorXd& x) { return std::exp(-x(0) * x(0)); }), std::sqrt(kPi), 1e-12);
  EXPECT_TRUE(std::isinf(e->haar_mass()));
  EXPECT_FALSE(e->compact());
}

TEST(GroupModel, Su2MassAndSchurOrthogonality) {
  const auto g = GroupModel::su2(4);
  EXPECT_NEAR(g->haar_mass(), 16 * kPi * kPi, 1e-9);
  double total = 0.0;
  for (double w : g->weights()) total += w;
  EXPECT_NEAR(total, 16 * kPi * kPi, 1e-9);
  // int |D^j_{ab}|^2 = V / (2j + 1)
  for (int two_j : {1, 2, 4}) {
    const double s = integrate(*g, [&](const Eigen::VectorXd& x) {
      const auto D = g->wigner().big_d(two_j, {x(0), x(1), x(2)});
      return std::norm(D(0, two_j / 2));
    });
    EXPECT_NEAR(s, 16 * kPi * kPi / (two_j + 1), 1e-8);
  }
}

TEST(GroupModel, Su2DistanceIsRotationAngle) {
  const auto g = GroupModel::su2(2);
  // exp(t X3) = diag(e^{-it/2}, e^{it/2}); geodesic distance t on the radius-2 sphere
  EXPECT_NEAR(g->distance(Eigen::Vector3d(0.7, 0.0, 0.0)), 0.7, 1e-12);
  EXPECT_NEAR(g->distance(Eigen::Vector3d(0.3, 0.0, 0.4)), 0.7, 1e-12);
  EXPECT_THROW(g->distance(Eigen::VectorXd::Zero(2)), Error);
}

TEST(GroupModel, GaussLegendreExactness) {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  double s10 = 0.0, s11 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s10 += w[i] * std::pow(x[i], 10);
    s11 += w[i] * std::pow(x[i], 11);
  }
  EXPECT_NEAR(s10, 2.0 / 11.0, 1e-14);
  EXPECT_NEAR(s11, 0.0, 1e-14);
}

TEST(GroupModel, HalfWidthRule) {
  const double L = euclidean_half_width(2.0);
  EXPECT_LT(std::exp(-2.0 * L), 1.0000001e-10);
}
