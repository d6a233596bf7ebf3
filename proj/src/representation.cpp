#include "sobrep/representation.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace sobrep {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
    case NormKind::hermitian: return "hermitian";
  }
  return "unknown";
}

NormKind norm_kind_from_string(const std::string& s) {
  if (s == "l1") return NormKind::l1;
  if (s == "l2") return NormKind::l2;
  if (s == "linf") return NormKind::linf;
  if (s == "hermitian") return NormKind::hermitian;
  throw Error(ErrorCode::config, fmt::format("unknown norm '{}' (expected l1, l2, linf, hermitian)", s));
}

// ---------------------------------------------------------------------------
// VectorNorm

VectorNorm::VectorNorm(NormKind kind) : kind_(kind) {
  if (kind == NormKind::hermitian) {
    throw Error(ErrorCode::invalid_argument, "hermitian norms need a Gram matrix; use VectorNorm::hermitian");
  }
}

VectorNorm VectorNorm::hermitian(const Eigen::MatrixXcd& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) {
    throw Error(ErrorCode::invalid_argument, "Gram matrix must be square and nonempty");
  }
  if ((gram - gram.adjoint()).norm() > 1e-12 * (1.0 + gram.norm())) {
    throw Error(ErrorCode::invalid_argument, "Gram matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("Gram matrix not positive definite (min eigenvalue {})", es.eigenvalues().minCoeff()));
  }
  VectorNorm n;
  n.kind_ = NormKind::hermitian;
  n.gram_ = gram;
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  n.chol_upper_ = llt.matrixU();
  return n;
}

Eigen::MatrixXcd VectorNorm::gram_of_size(Eigen::Index n) const {
  if (kind_ == NormKind::l2) return Eigen::MatrixXcd::Identity(n, n);
  if (kind_ == NormKind::hermitian) {
    if (gram_.rows() != n) throw Error(ErrorCode::invalid_argument, "Gram matrix size mismatch");
    return gram_;
  }
  throw Error(ErrorCode::unsupported, fmt::format("norm {} has no Gram matrix", to_string(kind_)));
}

double VectorNorm::operator()(const Eigen::VectorXcd& v) const {
  switch (kind_) {
    case NormKind::l1: return v.cwiseAbs().sum();
    case NormKind::l2: return v.norm();
    case NormKind::linf: return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    case NormKind::hermitian: return (chol_upper_ * v).norm();
  }
  return 0.0;
}

double VectorNorm::dual(const Eigen::VectorXcd& lambda) const {
  switch (kind_) {
    case NormKind::l1: return lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
    case NormKind::l2: return lambda.norm();
    case NormKind::linf: return lambda.cwiseAbs().sum();
    case NormKind::hermitian: {
      // lambda^T S^{-1} conj(lambda) = |U^{-*} conj(lambda)|^2
      const Eigen::VectorXcd mu = lambda.conjugate();
      const Eigen::VectorXcd y = chol_upper_.adjoint().triangularView<Eigen::Lower>().solve(mu);
      return y.norm();
    }
  }
  return 0.0;
}

double VectorNorm::operator_norm(const Eigen::MatrixXcd& a) const {
  switch (kind_) {
    case NormKind::l1: return a.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::linf: return a.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::l2: {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
      return svd.singularValues()(0);
    }
    case NormKind::hermitian: {
      const Eigen::MatrixXcd t =
          chol_upper_ * chol_upper_.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd(a.adjoint())).adjoint();
      // t = U A U^{-1}
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
      return svd.singularValues()(0);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Representation

Representation::Representation(ModelPtr model, std::vector<Eigen::MatrixXcd> generators, VectorNorm norm,
                               std::string name)
    : model_(std::move(model)), generators_(std::move(generators)), norm_(std::move(norm)), name_(std::move(name)) {
  const auto& g = *model_->algebra();
  if (static_cast<int>(generators_.size()) != g.dim()) {
    throw Error(ErrorCode::algebra_mismatch,
                fmt::format("expected {} generators, got {}", g.dim(), generators_.size()));
  }
  dim_ = generators_.front().rows();
  if (dim_ == 0) throw Error(ErrorCode::invalid_argument, "representation space must be nonzero");
  diagonal_ = true;
  for (const auto& d : generators_) {
    if (d.rows() != dim_ || d.cols() != dim_) {
      throw Error(ErrorCode::invalid_argument, "generator matrices must be square and of equal size");
    }
    if (!d.allFinite()) throw Error(ErrorCode::invalid_argument, "non-finite generator entry");
    Eigen::MatrixXcd off = d;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() != 0.0) diagonal_ = false;
  }
  if (norm_.kind() == NormKind::hermitian && norm_.gram().rows() != dim_) {
    throw Error(ErrorCode::invalid_argument, "Gram matrix size does not match the representation");
  }
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) {
      Eigen::MatrixXcd r = generators_[i] * generators_[j] - generators_[j] * generators_[i];
      for (int k = 0; k < g.dim(); ++k) r -= g.c(i, j, k) * generators_[k];
      const double res = r.norm();
      bracket_residual_ = std::max(bracket_residual_, res);
      if (res > 1e-10) {
        throw Error(ErrorCode::algebra_mismatch,
                    fmt::format("generators violate the bracket relation for (i,j)=({},{}): residual {}", i, j, res));
      }
    }
}

Representation Representation::torus_regular(int N, int n, VectorNorm norm, int nodes_per_axis) {
  if (N < 0 || n < 1) throw Error(ErrorCode::invalid_argument, "torus_regular needs N >= 0 and n >= 1");
  const int side = 2 * N + 1;
  Eigen::Index dim = 1;
  for (int d = 0; d < n; ++d) dim *= side;
  std::vector<Eigen::MatrixXcd> gens(static_cast<std::size_t>(n), Eigen::MatrixXcd::Zero(dim, dim));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index rem = idx;
    for (int d = n - 1; d >= 0; --d) {
      const int k = static_cast<int>(rem % side) - N;
      rem /= side;
      gens[static_cast<std::size_t>(d)](idx, idx) = Complex(0.0, -static_cast<double>(k));
    }
  }
  const int nodes = nodes_per_axis > 0 ? nodes_per_axis : 4 * (N + 1);
  return Representation(GroupModel::torus(n, nodes), std::move(gens), std::move(norm),
                        fmt::format("torus_regular(N={},n={})", N, n));
}

Representation Representation::su2_irrep(double l, VectorNorm norm, int band) {
  const double twice = 2.0 * l;
  if (l < 0.0 || std::abs(twice - std::round(twice)) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, fmt::format("spin must be a nonnegative half integer, got {}", l));
  }
  const int two_l = static_cast<int>(std::round(twice));
  const int b = band > 0 ? band : std::max(12, (two_l + 1) / 2);
  auto g = su2::generators(two_l);
  return Representation(GroupModel::su2(b), {g[0], g[1], g[2]}, std::move(norm), fmt::format("su2_irrep(l={})", l));
}

Representation Representation::euclidean_matrix(std::vector<Eigen::MatrixXcd> matrices, VectorNorm norm,
                                                double half_width, int nodes_per_axis) {
  const int n = static_cast<int>(matrices.size());
  if (n == 0) throw Error(ErrorCode::invalid_argument, "euclidean_matrix needs at least one matrix");
  int nodes = nodes_per_axis;
  if (n >= 2 && nodes == 65536) nodes = n == 2 ? 1024 : 64;
  return Representation(GroupModel::euclidean(n, half_width, nodes), std::move(matrices), std::move(norm),
                        fmt::format("euclidean_matrix(n={})", n));
}

Representation Representation::with_model(ModelPtr model) const {
  if (model->kind() != model_->kind() || model->dim() != model_->dim()) {
    throw Error(ErrorCode::model_mismatch, "replacement model must have the same kind and dimension");
  }
  return Representation(std::move(model), generators_, norm_, name_);
}

Representation Representation::with_norm(VectorNorm norm) const {
  return Representation(model_, generators_, std::move(norm), name_);
}

// ---------------------------------------------------------------------------
// d pi, pi

namespace {

Eigen::VectorXcd apply_monomial(const Representation& rep, const Monomial& m, Eigen::VectorXcd v) {
  // X_1^{m_1} ... X_n^{m_n} v: the rightmost factor acts first.
  for (int j = m.dim() - 1; j >= 0; --j)
    for (int e = 0; e < m.exponents[static_cast<std::size_t>(j)]; ++e) v = rep.generators()[static_cast<std::size_t>(j)] * v;
  return v;
}

void check_algebra(const Representation& rep, const EnvelopingElement& u) {
  if (u.algebra() != rep.algebra() && u.algebra()->distance_to(*rep.algebra()) != 0.0) {
    throw Error(ErrorCode::algebra_mismatch, "enveloping element and representation use different algebras");
  }
}

}  // namespace

Eigen::MatrixXcd d_pi(const Representation& rep, const EnvelopingElement& u) {
  check_algebra(rep, u);
  const Eigen::Index N = rep.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& [m, c] : u.terms()) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(N, N);
    for (int j = 0; j < m.dim(); ++j)
      for (int e = 0; e < m.exponents[static_cast<std::size_t>(j)]; ++e) prod = prod * rep.generators()[static_cast<std::size_t>(j)];
    out += c * prod;
  }
  return out;
}

Eigen::VectorXcd d_pi_apply(const Representation& rep, const EnvelopingElement& u, const Eigen::VectorXcd& v) {
  check_algebra(rep, u);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rep.dim());
  for (const auto& [m, c] : u.terms()) out += c * apply_monomial(rep, m, v);
  return out;
}

Eigen::MatrixXcd pi(const Representation& rep, const Eigen::VectorXd& exp_coords) {
  if (exp_coords.size() != rep.n() || !exp_coords.allFinite()) {
    throw Error(ErrorCode::malformed_coordinates, "exponential coordinates have the wrong size");
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
  for (int j = 0; j < rep.n(); ++j) a += exp_coords(j) * rep.generators()[static_cast<std::size_t>(j)];
  if (rep.diagonal_generators()) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
    for (Eigen::Index i = 0; i < rep.dim(); ++i) out(i, i) = std::exp(a(i, i));
    return out;
  }
  return a.exp();
}

Eigen::MatrixXcd pi_at_node(const Representation& rep, std::size_t node) {
  const auto& m = *rep.model();
  const Eigen::VectorXd x = m.node(node);
  if (m.kind() != GroupKind::su2) return pi(rep, x);
  const auto& g = rep.generators();
  const Eigen::MatrixXcd a = (x(0) * g[2]).exp();
  const Eigen::MatrixXcd b = (x(1) * g[1]).exp();
  const Eigen::MatrixXcd c = (x(2) * g[2]).exp();
  return a * b * c;
}

double exp_distance(const GroupModel& model, const Eigen::VectorXd& x) {
  switch (model.kind()) {
    case GroupKind::euclidean:
    case GroupKind::torus: return model.distance(x);
    case GroupKind::su2: {
      // exp(sum x_j X_j), X_j = -i sigma_j / 2: rotation by |x|, half angle |x|/2.
      const double t = x.norm();
      const double omega = std::acos(std::cos(0.5 * t));
      return 2.0 * omega;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Growth

GrowthEstimate growth_rate(const Representation& rep, int n_dirs, double t_max, std::uint64_t seed) {
  if (!(t_max > 0.0)) throw Error(ErrorCode::invalid_argument, "t_max must be positive");
  const int n = rep.n();
  std::vector<Eigen::VectorXd> dirs;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(j) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  while (static_cast<int>(dirs.size()) < n_dirs) {
    Eigen::VectorXd u(n);
    for (int j = 0; j < n; ++j) u(j) = gauss(rng);
    if (u.norm() < 1e-12) continue;
    dirs.push_back(u / u.norm());
  }

  GrowthEstimate est;
  constexpr int kSteps = 64;
  double tm = t_max;
  for (int attempt = 0; attempt < 60; ++attempt) {
    est.samples.clear();
    bool overflow = false;
    double c_best = 0.0;
    std::vector<std::vector<double>> logs(dirs.size());
    for (std::size_t di = 0; di < dirs.size() && !overflow; ++di) {
      for (int s = 1; s <= kSteps; ++s) {
        const double t = tm * s / kSteps;
        const Eigen::VectorXd x = t * dirs[di];
        const double w = rep.norm().operator_norm(pi(rep, x));
        if (!std::isfinite(w) || w <= 0.0) {
          overflow = true;
          break;
        }
        logs[di].push_back(std::log(w));
        est.samples.emplace_back(exp_distance(*rep.model(), x), std::log(w));
      }
      if (!overflow) {
        const double hi = logs[di].back(), mid = logs[di][kSteps / 2 - 1];
        c_best = std::max(c_best, (hi - mid) / (0.5 * tm));
      }
    }
    if (overflow) {
      tm *= 0.5;
      est.overflow_reduced = true;
      continue;
    }
    est.c_pi = c_best;
    est.t_max = tm;
    double logC = 0.0;
    for (const auto& [d, lw] : est.samples) logC = std::max(logC, lw - est.c_pi * d);
    est.C = std::exp(logC);
    return est;
  }
  throw Error(ErrorCode::overflow, "operator norms overflow even for tiny t_max");
}

// ---------------------------------------------------------------------------
// Smearing

Eigen::VectorXcd smearing(const Representation& rep, const GroupFunction& phi, const Eigen::VectorXcd& v,
                          std::optional<double> c_pi) {
  const auto& m = *rep.model();
  if (!m.same_as(*phi.model())) {
    throw Error(ErrorCode::model_mismatch, "function and representation live on different models");
  }
  if (v.size() != rep.dim()) throw Error(ErrorCode::invalid_argument, "vector size does not match representation");
  if (!m.compact()) {
    const double growth = c_pi ? *c_pi : growth_rate(rep).c_pi;
    const double decay = fitted_decay_rate(phi);
    if (!(decay > growth + 1e-9)) {
      throw Error(ErrorCode::divergence,
                  fmt::format("smearing integral diverges: fitted decay {} does not exceed growth rate {}", decay, growth));
    }
  }

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rep.dim());
  const auto& w = m.weights();
  if (m.kind() == GroupKind::su2) {
    // Cache the factors of the Euler product per axis value.
    const auto& g = rep.generators();
    const int na = m.su2_alpha_count(), nb = m.su2_beta_count(), nc = m.su2_gamma_count();
    std::vector<Eigen::MatrixXcd> ea(static_cast<std::size_t>(na)), eb(static_cast<std::size_t>(nb)),
        ec(static_cast<std::size_t>(nc));
    for (int i = 0; i < na; ++i) ea[static_cast<std::size_t>(i)] = (m.node(static_cast<std::size_t>(i) * nc)(0) * g[2]).exp();
    for (int i = 0; i < nc; ++i) ec[static_cast<std::size_t>(i)] = (m.node(static_cast<std::size_t>(i))(2) * g[2]).exp();
    for (int i = 0; i < nb; ++i) eb[static_cast<std::size_t>(i)] = (m.su2_betas()[static_cast<std::size_t>(i)] * g[1]).exp();
    std::vector<Eigen::VectorXcd> cv(static_cast<std::size_t>(nc));
    for (int i = 0; i < nc; ++i) cv[static_cast<std::size_t>(i)] = ec[static_cast<std::size_t>(i)] * v;
    std::size_t idx = 0;
    for (int ib = 0; ib < nb; ++ib)
      for (int ia = 0; ia < na; ++ia) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(rep.dim());
        for (int ic = 0; ic < nc; ++ic, ++idx) {
          const Complex f = phi.values()(static_cast<Eigen::Index>(idx));
          if (f == Complex(0.0)) continue;
          acc += (w[idx] * f) * cv[static_cast<std::size_t>(ic)];
        }
        out += ea[static_cast<std::size_t>(ia)] * (eb[static_cast<std::size_t>(ib)] * acc);
      }
    return out;
  }

  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const Complex f = phi.values()(static_cast<Eigen::Index>(i));
    if (f == Complex(0.0)) continue;
    const Eigen::VectorXd x = m.node(i);
    if (rep.diagonal_generators()) {
      Eigen::VectorXcd a = Eigen::VectorXcd::Zero(rep.dim());
      for (int j = 0; j < rep.n(); ++j) a += x(j) * rep.generators()[static_cast<std::size_t>(j)].diagonal();
      out += (w[i] * f) * (a.array().exp() * v.array()).matrix();
    } else {
      out += (w[i] * f) * (pi(rep, x) * v);
    }
  }
  return out;
}

}  // namespace sobrep
