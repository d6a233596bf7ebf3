#include "sobrep/lie_algebra.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sobrep/enveloping.hpp"

namespace sobrep {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::invalid_algebra: return "invalid_algebra";
    case ErrorCode::algebra_mismatch: return "algebra_mismatch";
    case ErrorCode::model_mismatch: return "model_mismatch";
    case ErrorCode::malformed_coordinates: return "malformed_coordinates";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::band_limit_exceeded: return "band_limit_exceeded";
    case ErrorCode::truncation_budget_exceeded: return "truncation_budget_exceeded";
    case ErrorCode::defective_matrix: return "defective_matrix";
    case ErrorCode::branch_cut: return "branch_cut";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::below_growth_threshold: return "below_growth_threshold";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

namespace {
constexpr double kAlgebraTol = 1e-12;
}

LieAlgebra::LieAlgebra(int dim, std::vector<double> structure_constants,
                       std::vector<std::string> labels)
    : dim_(dim), c_(std::move(structure_constants)), labels_(std::move(labels)) {
  if (dim_ <= 0) {
    throw Error(ErrorCode::invalid_algebra, fmt::format("dimension must be positive, got {}", dim_));
  }
  const auto n = static_cast<std::size_t>(dim_);
  if (c_.size() != n * n * n) {
    throw Error(ErrorCode::invalid_algebra,
                fmt::format("expected {} structure constants, got {}", n * n * n, c_.size()));
  }
  if (labels_.empty()) {
    for (int j = 0; j < dim_; ++j) labels_.push_back(fmt::format("X{}", j + 1));
  } else if (labels_.size() != n) {
    throw Error(ErrorCode::invalid_algebra, "label count does not match dimension");
  }
  for (double v : c_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_algebra, "non-finite structure constant");
  }

  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (std::abs(c(i, j, k) + c(j, i, k)) > kAlgebraTol) {
          throw Error(ErrorCode::invalid_algebra,
                      fmt::format("antisymmetry violated at (i,j,k)=({},{},{}): c[i][j][k]={} c[j][i][k]={}",
                                  i, j, k, c(i, j, k), c(j, i, k)));
        }

  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m) {
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          }
          if (std::abs(s) > kAlgebraTol) {
            throw Error(ErrorCode::invalid_algebra,
                        fmt::format("Jacobi identity violated for triple (i,j,k)=({},{},{}) in component {}: {}",
                                    i, j, k, l, s));
          }
        }
}

std::shared_ptr<const LieAlgebra> LieAlgebra::abelian(int dim) {
  const auto n = static_cast<std::size_t>(dim > 0 ? dim : 0);
  return std::make_shared<const LieAlgebra>(dim, std::vector<double>(n * n * n, 0.0));
}

std::shared_ptr<const LieAlgebra> LieAlgebra::su2() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int k, double v) { c[(i * 3 + j) * 3 + k] = v; };
  // [X_i, X_j] = eps_ijk X_k
  set(0, 1, 2, 1.0);
  set(1, 0, 2, -1.0);
  set(1, 2, 0, 1.0);
  set(2, 1, 0, -1.0);
  set(2, 0, 1, 1.0);
  set(0, 2, 1, -1.0);
  return std::make_shared<const LieAlgebra>(3, std::move(c), std::vector<std::string>{"X1", "X2", "X3"});
}

std::shared_ptr<const LieAlgebra> LieAlgebra::axb() {
  std::vector<double> c(8, 0.0);
  c[(0 * 2 + 1) * 2 + 1] = 1.0;   // [X, Y] = Y
  c[(1 * 2 + 0) * 2 + 1] = -1.0;  // [Y, X] = -Y
  return std::make_shared<const LieAlgebra>(2, std::move(c), std::vector<std::string>{"X", "Y"});
}

void LieAlgebra::check_index(int j) const {
  if (j < 0 || j >= dim_) {
    throw Error(ErrorCode::index_out_of_range,
                fmt::format("basis index {} out of range [0, {})", j, dim_));
  }
}

Eigen::MatrixXd LieAlgebra::ad_matrix(int j) const {
  check_index(j);
  Eigen::MatrixXd ad(dim_, dim_);
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i) ad(k, i) = c(j, i, k);
  return ad;
}

double LieAlgebra::trace_ad(int j) const {
  check_index(j);
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += c(j, i, i);
  return t;
}

bool LieAlgebra::is_unimodular(double tol) const {
  for (int j = 0; j < dim_; ++j)
    if (std::abs(trace_ad(j)) > tol) return false;
  return true;
}

bool LieAlgebra::is_abelian() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

double LieAlgebra::distance_to(const LieAlgebra& other) const {
  if (other.dim_ != dim_) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) d = std::max(d, std::abs(c_[i] - other.c_[i]));
  return d;
}

EnvelopingElement laplace_element(const AlgebraPtr& algebra) {
  EnvelopingElement delta(algebra);
  for (int j = 0; j < algebra->dim(); ++j) {
    Monomial sq(algebra->dim());
    sq.exponents[j] = 2;
    delta.add_term(sq, -1.0);
    const double t = algebra->trace_ad(j);
    if (t != 0.0) delta.add_term(Monomial::generator(algebra->dim(), j), -t);
  }
  return delta;
}

}  // namespace sobrep
