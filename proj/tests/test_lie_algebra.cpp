#include <gtest/gtest.h>

#include "sobrep/lie_algebra.hpp"

using namespace sobrep;

TEST(LieAlgebra, Su2IsCyclic) {
  const auto g = LieAlgebra::su2();
  EXPECT_EQ(g->dim(), 3);
  EXPECT_DOUBLE_EQ(g->c(0, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(g->c(1, 2, 0), 1.0);
  EXPECT_DOUBLE_EQ(g->c(2, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g->c(1, 0, 2), -1.0);
  EXPECT_TRUE(g->is_unimodular());
  EXPECT_FALSE(g->is_abelian());
}

TEST(LieAlgebra, AxbTraceOfAd) {
  // [X, Y] = Y: ad X maps Y to Y, ad Y maps X to -Y
  const auto g = LieAlgebra::axb();
  EXPECT_DOUBLE_EQ(g->trace_ad(0), 1.0);
  EXPECT_DOUBLE_EQ(g->trace_ad(1), 0.0);
  EXPECT_FALSE(g->is_unimodular());
  const Eigen::MatrixXd adY = g->ad_matrix(1);
  EXPECT_DOUBLE_EQ(adY(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(adY(0, 0), 0.0);
}

TEST(LieAlgebra, AbelianHasZeroBrackets) {
  const auto g = LieAlgebra::abelian(4);
  EXPECT_TRUE(g->is_abelian());
  EXPECT_EQ(g->distance_to(*LieAlgebra::abelian(4)), 0.0);
}

TEST(LieAlgebra, JacobiViolationNamesTriple) {
  // [X0, X1] = X0, [X1, X2] = X1: the Jacobi sum on (0, 1, 2) is X0
  std::vector<double> c(27, 0.0);
  const auto at = [](int i, int j, int k) { return static_cast<std::size_t>((i * 3 + j) * 3 + k); };
  c[at(0, 1, 0)] = 1.0;
  c[at(1, 0, 0)] = -1.0;
  c[at(1, 2, 1)] = 1.0;
  c[at(2, 1, 1)] = -1.0;
  try {
    LieAlgebra g(3, c);
    FAIL() << "expected invalid_algebra";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_algebra);
    EXPECT_NE(std::string(e.what()).find("(0,1,2)"), std::string::npos) << e.what();
  }
}

TEST(LieAlgebra, AntisymmetryViolationRejected) {
  std::vector<double> c(8, 0.0);
  c[(0 * 2 + 1) * 2 + 1] = 1.0;  // [X0, X1] = X1 without the (1, 0) entry
  EXPECT_THROW(LieAlgebra(2, c), Error);
}

TEST(LieAlgebra, BadIndexRejected) {
  EXPECT_THROW(LieAlgebra::su2()->ad_matrix(3), Error);
}
