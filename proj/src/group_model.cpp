#include "sobrep/group_model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace sobrep {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double t) {
  // Representative in [-pi, pi].
  double r = std::remainder(t, 2.0 * kPi);
  return r;
}
}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::torus: return "torus";
    case GroupKind::euclidean: return "euclidean";
    case GroupKind::su2: return "su2";
  }
  return "unknown";
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

double euclidean_half_width(double decay_margin) {
  if (!(decay_margin > 0.0)) {
    throw Error(ErrorCode::divergence, fmt::format("decay margin must be positive, got {}", decay_margin));
  }
  return std::ceil(std::log(1e10) / decay_margin);
}

std::shared_ptr<const GroupModel> GroupModel::torus(int n, int nodes_per_axis) {
  if (n < 1 || nodes_per_axis < 4 || nodes_per_axis % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "torus needs n >= 1 and an even node count >= 4");
  }
  std::shared_ptr<GroupModel> g(new GroupModel());
  g->kind_ = GroupKind::torus;
  g->dim_ = n;
  g->algebra_ = LieAlgebra::abelian(n);
  g->nodes_per_axis_ = nodes_per_axis;
  g->origin_ = 0.0;
  g->period_ = 2.0 * kPi;
  g->step_ = g->period_ / nodes_per_axis;
  g->haar_mass_ = std::pow(2.0 * kPi, n);
  g->finish_grid();
  return g;
}

std::shared_ptr<const GroupModel> GroupModel::euclidean(int n, double half_width, int nodes_per_axis) {
  if (n < 1 || nodes_per_axis < 4 || nodes_per_axis % 2 != 0 || !(half_width > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "euclidean model needs n >= 1, positive half width and an even node count >= 4");
  }
  std::shared_ptr<GroupModel> g(new GroupModel());
  g->kind_ = GroupKind::euclidean;
  g->dim_ = n;
  g->algebra_ = LieAlgebra::abelian(n);
  g->nodes_per_axis_ = nodes_per_axis;
  g->half_width_ = half_width;
  g->origin_ = -half_width;
  g->period_ = 2.0 * half_width;
  g->step_ = g->period_ / nodes_per_axis;
  g->haar_mass_ = std::numeric_limits<double>::infinity();
  g->finish_grid();
  return g;
}

void GroupModel::finish_grid() {
  const auto m = static_cast<std::size_t>(nodes_per_axis_);
  std::size_t total = 1;
  for (int d = 0; d < dim_; ++d) total *= m;
  nodes_.resize(dim_, static_cast<Eigen::Index>(total));
  weights_.assign(total, std::pow(step_, dim_));
  distances_.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (int d = dim_ - 1; d >= 0; --d) {
      const auto j = rem % m;
      rem /= m;
      nodes_(d, static_cast<Eigen::Index>(i)) = origin_ + static_cast<double>(j) * step_;
    }
    distances_[i] = distance(nodes_.col(static_cast<Eigen::Index>(i)));
  }
  // Identity: index 0 on the torus, the centre of the box for Euclidean.
  if (kind_ == GroupKind::torus) {
    identity_node_ = 0;
  } else {
    std::size_t idx = 0;
    for (int d = 0; d < dim_; ++d) idx = idx * m + m / 2;
    identity_node_ = idx;
  }
}

std::shared_ptr<const GroupModel> GroupModel::su2(int band) {
  if (band < 0) throw Error(ErrorCode::invalid_argument, "su2 band must be nonnegative");
  std::shared_ptr<GroupModel> g(new GroupModel());
  g->kind_ = GroupKind::su2;
  g->dim_ = 3;
  g->algebra_ = LieAlgebra::su2();
  g->band_ = band;
  g->n_alpha_ = 4 * band + 2;
  g->n_gamma_ = 4 * band + 2;
  g->n_beta_ = 2 * band + 2;
  g->haar_mass_ = 16.0 * kPi * kPi;
  g->wigner_ = std::make_shared<const su2::WignerTable>(2 * band);

  std::vector<double> x, w;
  gauss_legendre(g->n_beta_, x, w);
  g->betas_.resize(x.size());
  g->beta_weights_ = w;
  for (std::size_t i = 0; i < x.size(); ++i) g->betas_[i] = std::acos(x[i]);

  const double da = 4.0 * kPi / g->n_alpha_;
  const double dc = 4.0 * kPi / g->n_gamma_;
  const std::size_t total = static_cast<std::size_t>(g->n_alpha_) * g->n_beta_ * g->n_gamma_;
  g->nodes_.resize(3, static_cast<Eigen::Index>(total));
  g->weights_.resize(total);
  g->distances_.resize(total);
  std::size_t i = 0;
  for (int ib = 0; ib < g->n_beta_; ++ib)
    for (int ia = 0; ia < g->n_alpha_; ++ia)
      for (int ic = 0; ic < g->n_gamma_; ++ic, ++i) {
        g->nodes_(0, static_cast<Eigen::Index>(i)) = ia * da;
        g->nodes_(1, static_cast<Eigen::Index>(i)) = g->betas_[static_cast<std::size_t>(ib)];
        g->nodes_(2, static_cast<Eigen::Index>(i)) = ic * dc;
        g->weights_[i] = 0.5 * da * dc * w[static_cast<std::size_t>(ib)];
        g->distances_[i] = g->distance(g->nodes_.col(static_cast<Eigen::Index>(i)));
      }
  // No Euler node sits exactly at e (beta = 0 is not a Gauss node); report the closest.
  g->identity_node_ = static_cast<std::size_t>(
      std::min_element(g->distances_.begin(), g->distances_.end()) - g->distances_.begin());
  return g;
}

double GroupModel::injectivity_scale() const noexcept {
  switch (kind_) {
    case GroupKind::torus: return kPi;
    case GroupKind::su2: return 2.0 * kPi;
    case GroupKind::euclidean: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double GroupModel::distance(const Eigen::VectorXd& coords) const {
  if (coords.size() != dim_ || !coords.allFinite()) {
    throw Error(ErrorCode::malformed_coordinates,
                fmt::format("expected {} finite coordinates for a {} element, got {}", dim_,
                            to_string(kind_), coords.size()));
  }
  switch (kind_) {
    case GroupKind::euclidean: return coords.norm();
    case GroupKind::torus: {
      double s = 0.0;
      for (Eigen::Index d = 0; d < coords.size(); ++d) {
        const double t = wrap_angle(coords(d));
        s += t * t;
      }
      return std::sqrt(s);
    }
    case GroupKind::su2: {
      const auto g = su2::matrix({coords(0), coords(1), coords(2)});
      return 2.0 * su2::half_angle(g);
    }
  }
  return 0.0;
}

Eigen::Matrix2cd GroupModel::su2_node_matrix(std::size_t i) const {
  const auto c = nodes_.col(static_cast<Eigen::Index>(i));
  return su2::matrix({c(0), c(1), c(2)});
}

int GroupModel::signed_index(std::size_t k, int axis) const {
  const auto m = static_cast<std::size_t>(nodes_per_axis_);
  std::size_t rem = k;
  for (int d = dim_ - 1; d > axis; --d) rem /= m;
  const int j = static_cast<int>(rem % m);
  return j < nodes_per_axis_ / 2 ? j : j - nodes_per_axis_;
}

Eigen::VectorXd GroupModel::frequency(std::size_t k) const {
  Eigen::VectorXd xi(dim_);
  for (int d = 0; d < dim_; ++d) xi(d) = 2.0 * kPi * signed_index(k, d) / period_;
  return xi;
}

bool GroupModel::is_nyquist(std::size_t k) const {
  for (int d = 0; d < dim_; ++d)
    if (signed_index(k, d) == -nodes_per_axis_ / 2) return true;
  return false;
}

double GroupModel::laplace_eigenvalue(std::size_t k) const {
  if (kind_ == GroupKind::su2) return su2::casimir(static_cast<int>(k));
  return frequency(k).squaredNorm();
}

bool GroupModel::same_as(const GroupModel& other) const {
  if (this == &other) return true;
  return kind_ == other.kind_ && dim_ == other.dim_ && nodes_per_axis_ == other.nodes_per_axis_ &&
         half_width_ == other.half_width_ && band_ == other.band_;
}

}  // namespace sobrep
