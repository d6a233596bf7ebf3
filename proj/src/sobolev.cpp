#include "sobrep/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "sobrep/enveloping.hpp"

namespace sobrep {

namespace {

bool is_integer(double x) { return std::isfinite(x) && x == std::round(x); }

Eigen::MatrixXcd monomial_matrix(const std::vector<Eigen::MatrixXcd>& gens, const Monomial& mono) {
  const Eigen::Index N = gens.front().rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(N, N);
  for (int j = 0; j < mono.dim(); ++j)
    for (int e = 0; e < mono.exponents[static_cast<std::size_t>(j)]; ++e) out = out * gens[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace

std::string to_string(NormFamily family) {
  switch (family) {
    case NormFamily::standard: return "standard";
    case NormFamily::laplace: return "laplace";
    case NormFamily::induced: return "induced";
    case NormFamily::negative: return "negative";
  }
  return "unknown";
}

NormFamily norm_family_from_string(const std::string& s) {
  if (s == "standard") return NormFamily::standard;
  if (s == "laplace") return NormFamily::laplace;
  if (s == "induced") return NormFamily::induced;
  if (s == "negative") return NormFamily::negative;
  throw Error(ErrorCode::config,
              fmt::format("unknown norm family '{}' (expected standard, laplace, induced, negative)", s));
}

// ---------------------------------------------------------------------------
// Standard norms

StandardSobolev::StandardSobolev(const std::vector<Eigen::MatrixXcd>& generators, VectorNorm norm, int k)
    : k_(k), norm_(std::move(norm)) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, fmt::format("order must be >= 0, got {}", k));
  if (generators.empty()) throw Error(ErrorCode::invalid_argument, "no generators");
  for (const auto& mono : monomials_up_to(static_cast<int>(generators.size()), k)) {
    mats_.push_back(monomial_matrix(generators, mono));
  }
}

double StandardSobolev::operator()(const Eigen::VectorXcd& v) const {
  double s = 0.0;
  for (const auto& m : mats_) {
    const double p = norm_(m * v);
    s += p * p;
  }
  return std::sqrt(s);
}

Eigen::MatrixXcd StandardSobolev::gram() const {
  const Eigen::Index N = mats_.front().rows();
  const Eigen::MatrixXcd S = norm_.gram_of_size(N);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& m : mats_) G += m.adjoint() * S * m;
  return G;
}

double standard_sobolev(const Representation& rep, const Eigen::VectorXcd& v, int k) {
  return StandardSobolev(rep, k)(v);
}

// ---------------------------------------------------------------------------
// Laplace norms

double laplace_sobolev_even(const Representation& rep, const Eigen::VectorXcd& v, int k, double R) {
  if (k < 0 || k % 2 != 0) throw Error(ErrorCode::invalid_argument, fmt::format("order must be even and >= 0, got {}", k));
  if (!(R > 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("R must be positive, got {}", R));
  return rep.norm()(d_pi_apply(rep, resolvent_element(rep.algebra(), R, k / 2), v));
}

LaplacePower laplace_power(const Representation& rep, double s, double R) {
  if (!(R > 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("R must be positive, got {}", R));
  if (!std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "order must be finite");
  const Eigen::Index N = rep.dim();
  Eigen::MatrixXcd M = d_pi(rep, laplace_element(rep.algebra()));
  M.diagonal().array() += R * R;

  LaplacePower out;
  const auto check_branch = [](Complex z) {
    if (z.real() <= 0.0 && std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z))) {
      throw Error(ErrorCode::branch_cut,
                  fmt::format("eigenvalue {}{:+}i of R^2 + d pi(Delta) lies on the branch cut", z.real(), z.imag()));
    }
  };
  const double h = 0.5 * s;

  Eigen::MatrixXcd off = M;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    out.eigenvalues = M.diagonal();
    out.matrix = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
      if (s != 0.0) check_branch(M(i, i));
      out.matrix(i, i) = s == 0.0 ? Complex(1.0) : std::pow(M(i, i), h);
    }
    return out;
  }
  if ((M - M.adjoint()).norm() <= 1e-12 * (1.0 + M.norm())) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
    out.eigenvalues = es.eigenvalues().cast<Complex>();
    if (s == 0.0) {
      out.matrix = Eigen::MatrixXcd::Identity(N, N);
      return out;
    }
    Eigen::VectorXcd p(N);
    for (Eigen::Index i = 0; i < N; ++i) {
      check_branch(out.eigenvalues(i));
      p(i) = std::pow(es.eigenvalues()(i), h);
    }
    out.matrix = es.eigenvectors() * p.asDiagonal() * es.eigenvectors().adjoint();
    return out;
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  out.eigenvalues = es.eigenvalues();
  const Eigen::MatrixXcd& V = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& sv = svd.singularValues();
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (s == 0.0) {
    out.matrix = Eigen::MatrixXcd::Identity(N, N);
    return out;
  }
  if (!(out.condition <= 1e12)) {
    throw Error(ErrorCode::defective_matrix,
                fmt::format("R^2 + d pi(Delta) is numerically defective (eigenvector condition {:.3e})", out.condition));
  }
  Eigen::VectorXcd p(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    check_branch(out.eigenvalues(i));
    p(i) = std::pow(out.eigenvalues(i), h);
  }
  const Eigen::MatrixXcd VP = V * p.asDiagonal();
  out.matrix = V.transpose().partialPivLu().solve(VP.transpose()).transpose();
  return out;
}

double laplace_sobolev(const Representation& rep, const Eigen::VectorXcd& v, double s, double R) {
  return rep.norm()(laplace_power(rep, s, R).matrix * v);
}

// ---------------------------------------------------------------------------
// Induced norms

double bump(const Eigen::VectorXd& x) {
  const double r2 = x.squaredNorm();
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

namespace {

struct InducedGrid {
  ModelPtr grid;
  double scale = 1.0;
  Eigen::VectorXd xi2;
};

InducedGrid induced_grid(const Representation& rep, const InducedOptions& opts, double entries) {
  if (rep.model()->kind() == GroupKind::su2) {
    throw Error(ErrorCode::unsupported, "induced norms need a flat chart; the SU2 chart is not implemented");
  }
  if (opts.grid_points < 4 || opts.grid_points % 2 != 0 || opts.padding < 1) {
    throw Error(ErrorCode::invalid_argument, "induced grid needs an even point count >= 4 and padding >= 1");
  }
  const int n = rep.n();
  const int P = opts.grid_points * opts.padding;
  const double total = std::pow(static_cast<double>(P), n);
  if (total * entries > 5e7) {
    throw Error(ErrorCode::unsupported,
                fmt::format("induced grid of {}^{} points is too large for dimension {}; lower grid_points", P, n,
                            rep.dim()));
  }
  InducedGrid g;
  g.grid = GroupModel::euclidean(n, static_cast<double>(opts.padding), P);
  // |hat f(xi_k)|^2 dxi = (h / P)^n |sum_j f_j e^{-i xi_k x_j}|^2 and the
  // transform returns that sum divided by P^n.
  g.scale = std::sqrt(std::pow(g.grid->grid_step() * P, n));
  const auto count = static_cast<Eigen::Index>(g.grid->node_count());
  g.xi2.resize(count);
  for (Eigen::Index k = 0; k < count; ++k) g.xi2(k) = g.grid->frequency(static_cast<std::size_t>(k)).squaredNorm();
  return g;
}

// bump(x) pi(x) at a grid node (zero matrix outside the ball).
Eigen::MatrixXcd bumped_pi(const Representation& rep, const Eigen::VectorXd& x) {
  const double b = bump(x);
  const Eigen::Index N = rep.dim();
  if (b == 0.0) return Eigen::MatrixXcd::Zero(N, N);
  if (rep.diagonal_generators()) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(N);
    for (int j = 0; j < rep.n(); ++j) a += x(j) * rep.generators()[static_cast<std::size_t>(j)].diagonal();
    return (b * a.array().exp()).matrix().asDiagonal();
  }
  return b * pi(rep, x);
}

struct DualSup {
  double value = 0.0;
  Eigen::VectorXcd u;  // left vector, A w = value u
  Eigen::VectorXcd w;  // maximizing functional
};

// sup_{p'(lambda) <= 1} ||A lambda||_2.  Top vectors for Hermitian kinds.
DualSup dual_ball_sup(const Eigen::MatrixXcd& A, const VectorNorm& norm, const InducedOptions& opts) {
  const Eigen::MatrixXcd G = A.adjoint() * A;
  DualSup out;
  switch (norm.kind()) {
    case NormKind::l2:
    case NormKind::hermitian: {
      Eigen::MatrixXcd Ut = Eigen::MatrixXcd::Identity(G.rows(), G.cols());
      if (norm.kind() == NormKind::hermitian) {
        Eigen::LLT<Eigen::MatrixXcd> llt(norm.gram());
        Ut = Eigen::MatrixXcd(llt.matrixU()).transpose();
      }
      const Eigen::MatrixXcd H = Ut.adjoint() * G * Ut;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (H + H.adjoint()));
      const Eigen::Index top = es.eigenvalues().size() - 1;
      out.value = std::sqrt(std::max(0.0, es.eigenvalues()(top)));
      out.w = Ut * es.eigenvectors().col(top);
      out.u = out.value > 0.0 ? Eigen::VectorXcd(A * out.w / out.value) : Eigen::VectorXcd::Zero(A.rows());
      return out;
    }
    case NormKind::linf:
      out.value = std::sqrt(std::max(0.0, G.diagonal().real().maxCoeff()));
      return out;
    case NormKind::l1: {
      // Maximize lambda^* G lambda over the polydisc |lambda_i| <= 1; the
      // maximum sits on the torus |lambda_i| = 1.  Fixed-point ascent from
      // several starts.
      const Eigen::Index N = G.rows();
      std::mt19937_64 rng(opts.seed);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      double best = 0.0;
      for (int start = 0; start < std::max(1, opts.ascent_starts); ++start) {
        Eigen::VectorXcd lam(N);
        if (start == 0) {
          lam.setOnes();
        } else if (start <= N) {
          const Eigen::VectorXcd col = G.col(start - 1);
          for (Eigen::Index i = 0; i < N; ++i) lam(i) = std::abs(col(i)) > 0.0 ? col(i) / std::abs(col(i)) : 1.0;
        } else {
          for (Eigen::Index i = 0; i < N; ++i) lam(i) = std::polar(1.0, phase(rng));
        }
        double val = (lam.adjoint() * G * lam)(0).real();
        for (int it = 0; it < 500; ++it) {
          const Eigen::VectorXcd g = G * lam;
          for (Eigen::Index i = 0; i < N; ++i) lam(i) = std::abs(g(i)) > 0.0 ? g(i) / std::abs(g(i)) : lam(i);
          const double next = (lam.adjoint() * G * lam)(0).real();
          if (next <= val * (1.0 + 1e-14)) {
            val = std::max(val, next);
            break;
          }
          val = next;
        }
        best = std::max(best, val);
      }
      out.value = std::sqrt(std::max(0.0, best));
      return out;
    }
  }
  return out;
}

Eigen::VectorXd sobolev_weights(const Eigen::VectorXd& xi2, double s) {
  if (!std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "order must be finite");
  return (1.0 + xi2.array()).pow(0.5 * s).matrix();
}

}  // namespace

InducedSobolev::InducedSobolev(const Representation& rep, const Eigen::VectorXcd& v, const InducedOptions& opts)
    : norm_(rep.norm()), opts_(opts) {
  if (v.size() != rep.dim()) throw Error(ErrorCode::invalid_argument, "vector size does not match representation");
  const InducedGrid g = induced_grid(rep, opts, static_cast<double>(rep.dim()));
  const auto count = static_cast<Eigen::Index>(g.grid->node_count());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(count, rep.dim());
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::VectorXd x = g.grid->node(static_cast<std::size_t>(i));
    if (bump(x) == 0.0) continue;
    u.row(i) = (bumped_pi(rep, x) * v).transpose();
  }
  raw_.resize(count, rep.dim());
  for (Eigen::Index c = 0; c < rep.dim(); ++c) raw_.col(c) = g.scale * forward_transform(*g.grid, u.col(c)).fourier;
  xi2_ = g.xi2;
}

double InducedSobolev::value(double s) const {
  return dual_ball_sup(sobolev_weights(xi2_, s).asDiagonal() * raw_, norm_, opts_).value;
}

InducedOperator::InducedOperator(const Representation& rep, const InducedOptions& opts)
    : norm_(rep.norm()), opts_(opts) {
  const Eigen::Index N = rep.dim();
  const InducedGrid g = induced_grid(rep, opts, static_cast<double>(N * N));
  const auto count = static_cast<Eigen::Index>(g.grid->node_count());
  std::vector<Eigen::MatrixXcd> u(static_cast<std::size_t>(N), Eigen::MatrixXcd::Zero(count, N));
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::VectorXd x = g.grid->node(static_cast<std::size_t>(i));
    if (bump(x) == 0.0) continue;
    const Eigen::MatrixXcd bp = bumped_pi(rep, x);
    for (Eigen::Index b = 0; b < N; ++b) u[static_cast<std::size_t>(b)].row(i) = bp.col(b).transpose();
  }
  raw_.resize(static_cast<std::size_t>(N));
  for (Eigen::Index b = 0; b < N; ++b) {
    auto& r = raw_[static_cast<std::size_t>(b)];
    r = Eigen::MatrixXcd::Zero(count, N);
    for (Eigen::Index a = 0; a < N; ++a) {
      const auto col = u[static_cast<std::size_t>(b)].col(a);
      if (col.cwiseAbs().maxCoeff() == 0.0) continue;
      r.col(a) = g.scale * forward_transform(*g.grid, col).fourier;
    }
  }
  xi2_ = g.xi2;
}

double InducedOperator::value(const Eigen::VectorXcd& v, double s, Eigen::VectorXcd* gradient) const {
  const auto N = static_cast<Eigen::Index>(raw_.size());
  if (v.size() != N) throw Error(ErrorCode::invalid_argument, "vector size does not match representation");
  const Eigen::VectorXd wts = sobolev_weights(xi2_, s);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(xi2_.size(), N);
  for (Eigen::Index b = 0; b < N; ++b)
    if (v(b) != Complex(0.0)) A += v(b) * raw_[static_cast<std::size_t>(b)];
  A = wts.asDiagonal() * A;
  const DualSup sup = dual_ball_sup(A, norm_, opts_);
  if (gradient) {
    if (!norm_.is_hermitian()) throw Error(ErrorCode::unsupported, "induced gradients need a Hermitian norm");
    // value = Re(u^* A(v) w) with A linear in v.
    const Eigen::VectorXcd wu = wts.cast<Complex>().cwiseProduct(sup.u);
    gradient->resize(N);
    for (Eigen::Index b = 0; b < N; ++b) (*gradient)(b) = std::conj(wu.dot(raw_[static_cast<std::size_t>(b)] * sup.w));
  }
  return sup.value;
}

double induced_sobolev(const Representation& rep, const Eigen::VectorXcd& v, double s, const InducedOptions& opts) {
  return InducedSobolev(rep, v, opts).value(s);
}

// ---------------------------------------------------------------------------
// Negative norms

std::vector<Eigen::MatrixXcd> dual_generators(const Representation& rep) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& d : rep.generators()) out.push_back(-d.adjoint());
  return out;
}

DualSobolev DualSobolev::from_operators(const Representation& rep, const std::vector<Eigen::MatrixXcd>& ops) {
  DualSobolev d;
  d.norm_ = rep.norm();
  const Eigen::Index N = rep.dim();
  const Eigen::MatrixXcd S = d.norm_.gram_of_size(N);
  Eigen::LLT<Eigen::MatrixXcd> sllt(S);
  d.T_ = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& B : ops) d.T_ += B.adjoint() * sllt.solve(B);
  d.T_ = 0.5 * (d.T_ + d.T_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.T_, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  d.condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::defective_matrix, "dual Gram matrix is not positive definite");
  }
  d.llt_.compute(d.T_);
  return d;
}

DualSobolev DualSobolev::standard(const Representation& rep, int k) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, fmt::format("order must be >= 0, got {}", k));
  if (!rep.norm().is_hermitian()) {
    if (k > 0) {
      throw Error(ErrorCode::unsupported,
                  fmt::format("negative norms of order {} need a Hermitian norm; {} is supported for k = 0 only",
                              k, to_string(rep.norm().kind())));
    }
    DualSobolev d;
    d.norm_ = rep.norm();
    d.trivial_ = true;
    return d;
  }
  return from_operators(rep, StandardSobolev(dual_generators(rep), VectorNorm(NormKind::l2), k).monomial_matrices());
}

DualSobolev DualSobolev::laplace(const Representation& rep, int k, double R) {
  if (k < 0 || k % 2 != 0) throw Error(ErrorCode::invalid_argument, fmt::format("order must be even and >= 0, got {}", k));
  if (!rep.norm().is_hermitian()) {
    throw Error(ErrorCode::unsupported, "dual Laplace norms need a Hermitian norm");
  }
  const Representation dual(rep.model(), dual_generators(rep), VectorNorm(NormKind::l2), rep.name() + "'");
  return from_operators(rep, {d_pi(dual, resolvent_element(rep.algebra(), R, k / 2))});
}

double DualSobolev::dual_norm(const Eigen::VectorXcd& lambda) const {
  if (trivial_) return norm_.dual(lambda);
  const Eigen::VectorXcd mu = lambda.conjugate();
  return std::sqrt(std::max(0.0, (mu.adjoint() * T_ * mu)(0).real()));
}

double DualSobolev::operator()(const Eigen::VectorXcd& v) const {
  if (trivial_) return norm_(v);
  return std::sqrt(std::max(0.0, (v.adjoint() * llt_.solve(v))(0).real()));
}

double negative_sobolev(const Representation& rep, const Eigen::VectorXcd& v, int k) {
  return DualSobolev::standard(rep, k)(v);
}

double integer_sobolev(const Representation& rep, const Eigen::VectorXcd& v, int j) {
  return j >= 0 ? standard_sobolev(rep, v, j) : negative_sobolev(rep, v, -j);
}

NormReport evaluate_norm(const Representation& rep, const Eigen::VectorXcd& v, NormFamily family, double order,
                         double R, const InducedOptions& opts) {
  NormReport r;
  r.family = family;
  r.order = order;
  switch (family) {
    case NormFamily::standard: {
      if (!is_integer(order) || order < 0) {
        throw Error(ErrorCode::invalid_argument, fmt::format("standard order must be a nonnegative integer, got {}", order));
      }
      r.value = standard_sobolev(rep, v, static_cast<int>(order));
      break;
    }
    case NormFamily::laplace: {
      r.R = R;
      const LaplacePower lp = laplace_power(rep, order, R);
      r.value = rep.norm()(lp.matrix * v);
      r.diagnostics["eigenvector_condition"] = lp.condition;
      if (is_integer(order) && static_cast<long>(order) % 2 == 0 && order >= 0) {
        r.diagnostics["even_path_value"] = laplace_sobolev_even(rep, v, static_cast<int>(order), R);
      }
      break;
    }
    case NormFamily::induced: {
      r.value = induced_sobolev(rep, v, order, opts);
      r.diagnostics["grid_points"] = opts.grid_points;
      r.diagnostics["padding"] = opts.padding;
      break;
    }
    case NormFamily::negative: {
      const double k = std::abs(order);
      if (!is_integer(k)) throw Error(ErrorCode::invalid_argument, fmt::format("negative order must be an integer, got {}", order));
      r.order = -k;
      const DualSobolev d = DualSobolev::standard(rep, static_cast<int>(k));
      r.value = d(v);
      r.diagnostics["gram_condition"] = d.condition();
      r.diagnostics["ill_conditioned"] = d.ill_conditioned() ? 1.0 : 0.0;
      break;
    }
  }
  return r;
}

}  // namespace sobrep
