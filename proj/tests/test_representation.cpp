#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sobrep/representation.hpp"
#include "sobrep/spectral.hpp"

using namespace sobrep;

namespace {

Eigen::VectorXcd sample(int n, unsigned seed) {
  std::srand(seed);
  return Eigen::VectorXcd::Random(n);
}

}  // namespace

TEST(VectorNorm, ClassicalDuals) {
  const Eigen::VectorXcd v = sample(5, 1);
  const Eigen::VectorXd a = v.cwiseAbs();
  EXPECT_NEAR(VectorNorm(NormKind::l1)(v), a.sum(), 1e-14);
  EXPECT_NEAR(VectorNorm(NormKind::linf)(v), a.maxCoeff(), 1e-14);
  EXPECT_NEAR(VectorNorm(NormKind::l1).dual(v), a.maxCoeff(), 1e-14);
  EXPECT_NEAR(VectorNorm(NormKind::linf).dual(v), a.sum(), 1e-14);
  EXPECT_NEAR(VectorNorm(NormKind::l2).dual(v), v.norm(), 1e-14);
}

TEST(VectorNorm, HermitianNormAndDual) {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(3, 3);
  const Eigen::MatrixXcd S = A.adjoint() * A + Eigen::MatrixXcd::Identity(3, 3);
  const VectorNorm p = VectorNorm::hermitian(S);
  const Eigen::VectorXcd v = sample(3, 2), l = sample(3, 3);
  EXPECT_NEAR(p(v), std::sqrt((v.adjoint() * S * v)(0).real()), 1e-12);
  const Complex q = (l.transpose() * S.inverse() * l.conjugate())(0);
  EXPECT_NEAR(p.dual(l), std::sqrt(q.real()), 1e-12);
  EXPECT_NEAR(q.imag(), 0.0, 1e-12);
}

TEST(VectorNorm, RejectsBadGram) {
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(2, 2);
  S(0, 1) = 0.5;
  EXPECT_THROW(VectorNorm::hermitian(S), Error);
  EXPECT_THROW(VectorNorm::hermitian(-Eigen::MatrixXcd::Identity(2, 2)), Error);
}

TEST(VectorNorm, OperatorNorms) {
  Eigen::MatrixXcd M(2, 2);
  M << 1.0, -2.0, 3.0, 0.5;
  EXPECT_NEAR(VectorNorm(NormKind::l1).operator_norm(M), 4.0, 1e-14);
  EXPECT_NEAR(VectorNorm(NormKind::linf).operator_norm(M), 3.5, 1e-14);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  EXPECT_NEAR(VectorNorm(NormKind::l2).operator_norm(M), svd.singularValues()(0), 1e-14);
  const Eigen::MatrixXcd D = Eigen::Vector2cd(2.0, -3.0).asDiagonal();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(2, 2);
  S(0, 0) = 4.0;
  EXPECT_NEAR(VectorNorm::hermitian(S).operator_norm(D), 3.0, 1e-13);
}

TEST(Representation, TorusRegular) {
  const auto r = Representation::torus_regular(3);
  EXPECT_EQ(r.dim(), 7);
  EXPECT_TRUE(r.diagonal_generators());
  const double x = 0.37;
  const Eigen::MatrixXcd P = pi(r, Eigen::VectorXd::Constant(1, x));
  for (int i = 0; i < 7; ++i) EXPECT_LT(std::abs(P(i, i) - std::exp(Complex(0, -(i - 3) * x))), 1e-14);
  const Eigen::MatrixXcd L = d_pi(r, laplace_element(r.algebra()));
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(L(i, i).real(), (i - 3) * (i - 3), 1e-14);
  EXPECT_EQ(Representation::torus_regular(2, 2).dim(), 25);
}

TEST(Representation, Su2Torus) {
  const auto r = Representation::su2_irrep(1.5);
  EXPECT_EQ(r.dim(), 4);
  EXPECT_LT(r.bracket_residual(), 1e-12);
  const double t = 0.8;
  const Eigen::MatrixXcd P = pi(r, Eigen::Vector3d(0, 0, t));
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(P(i, i) - std::exp(Complex(0, -(1.5 - i) * t))), 1e-13);
  EXPECT_NEAR(exp_distance(*r.model(), Eigen::Vector3d(0, 0, t)), t, 1e-12);
}

TEST(Representation, PiAtNodeAgreesWithWigner) {
  const auto r = Representation::su2_irrep(1.0, VectorNorm(NormKind::l2), 2);
  const auto& m = *r.model();
  for (std::size_t i : {std::size_t{0}, m.node_count() / 3, m.node_count() - 1}) {
    const Eigen::VectorXd x = m.node(i);
    EXPECT_LT((pi_at_node(r, i) - m.wigner().big_d(2, {x(0), x(1), x(2)})).norm(), 1e-12);
  }
}

TEST(Representation, RejectsIncompatibleGenerators) {
  std::vector<Eigen::MatrixXcd> g(3, Eigen::MatrixXcd::Zero(2, 2));
  g[0](0, 1) = 1.0;
  g[1](1, 0) = 1.0;
  EXPECT_THROW(Representation(GroupModel::su2(2), g, VectorNorm()), Error);
}

TEST(Representation, GrowthOfScalar) {
  const auto r = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 0.7)});
  const GrowthEstimate g = growth_rate(r);
  EXPECT_NEAR(g.c_pi, 0.7, 1e-9);
  EXPECT_NEAR(g.C, 1.0, 1e-6);
}

TEST(Representation, SmearingScalar) {
  // int e^{-|x|}/2 e^{x/2} dx = 4/3
  const auto r = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 0.5)});
  const Kernel k = kernel(r.model(), SpectralFunction::resolvent_power(1.0, 1));
  const Eigen::VectorXcd out = smearing(r, k.smearing_function(), Eigen::VectorXcd::Ones(1));
  EXPECT_NEAR(out(0).real(), 4.0 / 3.0, 1e-6);
}

TEST(Representation, SmearingDiverges) {
  const auto r = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 1.5)});
  const Kernel k = kernel(r.model(), SpectralFunction::resolvent_power(1.0, 1));
  try {
    smearing(r, k.smearing_function(), Eigen::VectorXcd::Ones(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::divergence);
  }
}

TEST(Representation, TorusSmearingIsFourierCoefficient) {
  // int cos(2x) e^{-ikx} dx = pi for k = +-2, else 0
  const auto r = Representation::torus_regular(3);
  const auto phi = GroupFunction::from_function(r.model(), [](const Eigen::VectorXd& x) { return Complex(std::cos(2 * x(0))); });
  const Eigen::VectorXcd out = smearing(r, phi, Eigen::VectorXcd::Ones(7));
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(out(i).real(), std::abs(i - 3) == 2 ? std::numbers::pi : 0.0, 1e-12);
}
