#include "sobrep/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include <fmt/format.h>

#include "sobrep/enveloping.hpp"

namespace sobrep {

namespace {

void extremes(const Representation& rep, Ensemble& e) {
  const Eigen::MatrixXcd L = d_pi(rep, laplace_element(rep.algebra()));
  Eigen::VectorXcd vals;
  Eigen::MatrixXcd vecs;
  if (rep.diagonal_generators()) {
    vals = L.diagonal();
    vecs = Eigen::MatrixXcd::Identity(L.rows(), L.cols());
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L);
    vals = es.eigenvalues();
    vecs = es.eigenvectors();
  }
  const Eigen::VectorXd mag = vals.cwiseAbs();
  const double lo = mag.minCoeff(), hi = mag.maxCoeff();
  const double tol = 1e-9 * std::max(1.0, hi);
  for (Eigen::Index i = 0; i < mag.size(); ++i) {
    const bool is_lo = std::abs(mag(i) - lo) <= tol, is_hi = std::abs(mag(i) - hi) <= tol;
    if (!is_lo && !is_hi) continue;
    Eigen::VectorXcd v = vecs.col(i);
    v /= rep.norm()(v);
    e.vectors.push_back(v);
    e.labels.push_back(fmt::format("{}[{}]", is_lo ? "lowest" : "highest", i));
  }
}

double min_of(const std::vector<double>& x) { return *std::min_element(x.begin(), x.end()); }
double max_of(const std::vector<double>& x) { return *std::max_element(x.begin(), x.end()); }

void finish(SandwichReport& r, const Ensemble& e) {
  r.ensemble_size = e.vectors.size();
  r.labels = e.labels;
  r.lower = min_of(r.lower_ratios);
  r.upper = max_of(r.upper_ratios);
}

void require_nonempty(const Ensemble& e) {
  if (e.vectors.empty()) throw Error(ErrorCode::invalid_argument, "empty ensemble");
}

}  // namespace

Ensemble make_ensemble(const Representation& rep, int random_count, std::uint64_t seed) {
  Ensemble e;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int i = 0; i < random_count; ++i) {
    Eigen::VectorXcd v(rep.dim());
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = Complex(g(rng), g(rng));
    v /= rep.norm()(v);
    e.vectors.push_back(v);
    e.labels.push_back(fmt::format("random[{}]", i));
  }
  extremes(rep, e);
  return e;
}

Ensemble basis_ensemble(const Representation& rep) {
  Ensemble e;
  for (Eigen::Index i = 0; i < rep.dim(); ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(rep.dim(), i);
    v /= rep.norm()(v);
    e.vectors.push_back(v);
    e.labels.push_back(fmt::format("basis[{}]", i));
  }
  return e;
}

GapReport spectral_gap(const Representation& rep, double R) {
  if (!(R > 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("R must be positive, got {}", R));
  GapReport g;
  g.R = R;
  g.c_pi = growth_rate(rep).c_pi;
  g.c_G = c_G(*rep.model(), 1.0).c_G;
  g.R_E = g.c_pi + g.c_G;
  const Eigen::MatrixXcd M = d_pi(rep, resolvent_element(rep.algebra(), R, 1));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  g.sigma_max = sv(0);
  g.sigma_min = sv(sv.size() - 1);
  g.invertible = g.sigma_min > 1e-12 * std::max(1.0, g.sigma_max);
  g.above_threshold = R > g.R_E;
  return g;
}

int sandwich_shift(int n) {
  const int m = n + 1;
  return m % 2 == 0 ? m : m + 1;
}

FactorizationReport vector_factorization_residual(const Representation& rep, const Eigen::VectorXcd& v, double R,
                                                  int m) {
  const int n = rep.n();
  if (2 * m - n - 1 < 0) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("kernel regularity 2m - n - 1 = {} is negative (m={}, n={})", 2 * m - n - 1, m, n));
  }
  if (v.size() != rep.dim()) throw Error(ErrorCode::invalid_argument, "vector size does not match representation");
  const GrowthEstimate growth = growth_rate(rep);
  FactorizationReport r;
  r.R = R;
  r.m = m;
  r.R_E = growth.c_pi + c_G(*rep.model(), 1.0).c_G;
  if (!(R > r.R_E)) {
    throw Error(ErrorCode::below_growth_threshold,
                fmt::format("R = {} does not exceed the measured R_E = {}", R, r.R_E));
  }
  const Kernel k = kernel(rep.model(), SpectralFunction::resolvent_power(R, m));
  r.kernel_tail = k.tail;
  const Eigen::VectorXcd w = d_pi_apply(rep, resolvent_element(rep.algebra(), R, m), v);
  const Eigen::VectorXcd back = smearing(rep, k.smearing_function(), w, growth.c_pi);
  r.residual = rep.norm()(v - back) / rep.norm()(v);
  return r;
}

SandwichReport sandwich_report(const Representation& rep, int k, double R, const Ensemble& ensemble) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, fmt::format("order must be >= 0, got {}", k));
  require_nonempty(ensemble);
  SandwichReport r;
  r.family = "standard/laplace";
  r.order = 2.0 * k;
  r.R = R;
  r.shift = sandwich_shift(rep.n());
  r.dimension = rep.dim();
  const StandardSobolev p(rep, 2 * k);
  const Eigen::MatrixXcd lo = d_pi(rep, resolvent_element(rep.algebra(), R, k));
  const Eigen::MatrixXcd hi = d_pi(rep, resolvent_element(rep.algebra(), R, k + r.shift / 2));
  for (const auto& v : ensemble.vectors) {
    const double pv = p(v);
    r.lower_ratios.push_back(pv / rep.norm()(lo * v));
    r.upper_ratios.push_back(pv / rep.norm()(hi * v));
  }
  finish(r, ensemble);
  return r;
}

namespace {

// Maximizes sign * log(||Q v|| / Sp(v)) over v in the span of the
// orthonormal columns of B by steepest ascent with backtracking.
Eigen::VectorXcd ratio_ascent(const Eigen::MatrixXcd& Q, const InducedOperator& op, double s, Eigen::VectorXcd v,
                              double sign, int iterations, const Eigen::MatrixXcd* B = nullptr) {
  const auto objective = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd* grad) {
    Eigen::VectorXcd g;
    const double sp = op.value(x, s, grad ? &g : nullptr);
    const Eigen::VectorXcd qx = Q * x;
    const double q2 = qx.squaredNorm();
    if (grad) {
      *grad = sign * (Eigen::VectorXcd(Q.adjoint() * qx) / q2 - g / sp);
      if (B) *grad = *B * (B->adjoint() * *grad);
    }
    return sign * (0.5 * std::log(q2) - std::log(sp));
  };
  v /= v.norm();
  Eigen::VectorXcd grad;
  double f = objective(v, &grad);
  double step = 0.1;
  for (int it = 0; it < iterations; ++it) {
    const double gn = grad.norm();
    if (!(gn > 1e-14)) break;
    bool moved = false;
    while (step > 1e-10) {
      Eigen::VectorXcd trial = v + (step / gn) * grad;
      trial /= trial.norm();
      Eigen::VectorXcd tg;
      const double ft = objective(trial, &tg);
      if (ft > f) {
        moved = ft - f > 1e-12 * std::abs(f) + 1e-15;
        v = trial;
        f = ft;
        grad = tg;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return v;
}

// Orthonormal bases of nested spectral subspaces of d pi(Delta), ordered by
// |eigenvalue|, roughly doubling in dimension and ending with the full space.
std::vector<Eigen::MatrixXcd> spectral_stages(const Representation& rep) {
  const Eigen::MatrixXcd L = d_pi(rep, laplace_element(rep.algebra()));
  Eigen::VectorXcd vals;
  Eigen::MatrixXcd vecs;
  if (rep.diagonal_generators()) {
    vals = L.diagonal();
    vecs = Eigen::MatrixXcd::Identity(L.rows(), L.cols());
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L);
    vals = es.eigenvalues();
    vecs = es.eigenvectors();
  }
  const Eigen::Index d = vals.size();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return std::abs(vals(a)) < std::abs(vals(b)); });
  const double tol = 1e-9 * std::max(1.0, std::abs(vals(idx.back())));
  std::vector<Eigen::MatrixXcd> stages;
  Eigen::Index target = 1;
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool group_end = i + 1 == d || std::abs(std::abs(vals(idx[static_cast<std::size_t>(i + 1)])) -
                                                  std::abs(vals(idx[static_cast<std::size_t>(i)]))) > tol;
    if (!group_end || (i + 1 < target && i + 1 < d)) continue;
    Eigen::MatrixXcd cols(d, i + 1);
    for (Eigen::Index j = 0; j <= i; ++j) cols.col(j) = vecs.col(idx[static_cast<std::size_t>(j)]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
    stages.push_back(qr.householderQ() * Eigen::MatrixXcd::Identity(d, i + 1));
    target = 2 * (i + 1);
  }
  return stages;
}

std::vector<std::size_t> order_by(const std::vector<double>& x, bool descending) {
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return descending ? x[a] > x[b] : x[a] < x[b]; });
  return idx;
}

}  // namespace

SandwichReport compare_induced(const Representation& rep, double s, double epsilon, const Ensemble& ensemble, double R,
                               const InducedOptions& opts, bool refine) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("epsilon must be positive, got {}", epsilon));
  require_nonempty(ensemble);
  SandwichReport r;
  r.family = "laplace/induced";
  r.order = s;
  r.R = R;
  r.dimension = rep.dim();
  const double s_hi = s + 0.5 * rep.n() + epsilon;
  const Eigen::MatrixXcd P = laplace_power(rep, s, R).matrix;

  std::optional<InducedOperator> op;
  if (rep.norm().is_hermitian()) {
    try {
      op.emplace(rep, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unsupported) throw;
    }
  }
  Ensemble e = ensemble;
  for (const auto& v : e.vectors) {
    const double lp = rep.norm()(P * v);
    if (op) {
      r.lower_ratios.push_back(lp / op->value(v, s));
      r.upper_ratios.push_back(lp / op->value(v, s_hi));
    } else {
      const InducedSobolev sp(rep, v, opts);
      r.lower_ratios.push_back(lp / sp.value(s));
      r.upper_ratios.push_back(lp / sp.value(s_hi));
    }
  }
  if (refine && op) {
    Eigen::LLT<Eigen::MatrixXcd> llt(rep.norm().gram_of_size(rep.dim()));
    const Eigen::MatrixXcd Q = Eigen::MatrixXcd(llt.matrixU()) * P;
    constexpr int kIterations = 150;
    const std::vector<Eigen::MatrixXcd> stages = spectral_stages(rep);
    const auto best_of = [&](const std::vector<double>& ratios, double order, double sign) {
      std::mt19937_64 rng(opts.seed);
      std::normal_distribution<double> g;
      // symmetric starting points are often stationary
      const auto kick = [&](const Eigen::VectorXcd& v, const Eigen::MatrixXcd& B) {
        Eigen::VectorXcd c(B.cols());
        for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = Complex(g(rng), g(rng));
        const Eigen::VectorXcd d = B * c;
        return Eigen::VectorXcd(v / v.norm() + 0.05 * d / d.norm());
      };
      std::vector<Eigen::VectorXcd> candidates;
      // continuation through the nested subspaces
      Eigen::VectorXcd v = stages.front().col(0);
      for (const auto& B : stages) v = ratio_ascent(Q, *op, order, kick(v, B), sign, kIterations, &B);
      candidates.push_back(v);
      const auto idx = order_by(ratios, sign > 0);
      const Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(rep.dim(), rep.dim());
      for (std::size_t i = 0; i < std::min<std::size_t>(2, idx.size()); ++i)
        candidates.push_back(ratio_ascent(Q, *op, order, kick(e.vectors[idx[i]], full), sign, kIterations));
      Eigen::VectorXcd best;
      double best_ratio = sign > 0 ? 0.0 : std::numeric_limits<double>::infinity();
      for (auto& c : candidates) {
        c /= rep.norm()(c);
        const double q = rep.norm()(P * c) / op->value(c, order);
        if (sign > 0 ? q > best_ratio : q < best_ratio) {
          best_ratio = q;
          best = c;
        }
      }
      return best;
    };
    const Eigen::VectorXcd lo = best_of(r.lower_ratios, s, -1.0);
    const Eigen::VectorXcd hi = best_of(r.upper_ratios, s_hi, 1.0);
    for (const auto& [v, label] : {std::pair{lo, "ascent-lower"}, std::pair{hi, "ascent-upper"}}) {
      const double lp = rep.norm()(P * v);
      r.lower_ratios.push_back(lp / op->value(v, s));
      r.upper_ratios.push_back(lp / op->value(v, s_hi));
      e.vectors.push_back(v);
      e.labels.push_back(label);
    }
  }
  finish(r, e);
  return r;
}

SandwichReport negative_sandwich(const Representation& rep, int k, double R, const Ensemble& ensemble) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, fmt::format("order must be >= 0, got {}", k));
  if (!rep.norm().is_hermitian()) {
    throw Error(ErrorCode::unsupported, "the negative-order sandwich needs a Hermitian norm");
  }
  require_nonempty(ensemble);
  SandwichReport r;
  r.family = "laplace/negative";
  r.order = -k;
  r.R = R;
  r.shift = rep.n() + 1;
  r.dimension = rep.dim();
  const Eigen::MatrixXcd P = laplace_power(rep, -static_cast<double>(k), R).matrix;
  const DualSobolev neg = DualSobolev::standard(rep, k);
  const int j = -k + rep.n() + 1;
  for (const auto& v : ensemble.vectors) {
    const double lp = rep.norm()(P * v);
    r.lower_ratios.push_back(lp / neg(v));
    r.upper_ratios.push_back(lp / integer_sobolev(rep, v, j));
  }
  finish(r, ensemble);
  return r;
}

RatioPair basis_stress(const Representation& rep, int k, const Eigen::MatrixXd& transform, const Ensemble& ensemble) {
  const int n = rep.n();
  if (transform.rows() != n || transform.cols() != n) {
    throw Error(ErrorCode::invalid_argument, fmt::format("transform must be {}x{}", n, n));
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(transform);
  if (!lu.isInvertible()) throw Error(ErrorCode::invalid_argument, "basis transform is singular");
  require_nonempty(ensemble);
  std::vector<Eigen::MatrixXcd> gens(static_cast<std::size_t>(n), Eigen::MatrixXcd::Zero(rep.dim(), rep.dim()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gens[static_cast<std::size_t>(a)] += transform(a, b) * rep.generators()[static_cast<std::size_t>(b)];
  const StandardSobolev pb(rep, k);
  const StandardSobolev pc(gens, rep.norm(), k);
  RatioPair out{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& v : ensemble.vectors) {
    const double q = pb(v) / pc(v);
    out.lower = std::min(out.lower, q);
    out.upper = std::max(out.upper, q);
  }
  return out;
}

Stability stability(const std::vector<SandwichReport>& reports) {
  Stability s;
  if (reports.empty()) return s;
  double llo = reports.front().lower, lhi = llo, ulo = reports.front().upper, uhi = ulo;
  for (const auto& r : reports) {
    llo = std::min(llo, r.lower);
    lhi = std::max(lhi, r.lower);
    ulo = std::min(ulo, r.upper);
    uhi = std::max(uhi, r.upper);
  }
  s.lower_spread = (lhi - llo) / llo;
  s.upper_spread = (uhi - ulo) / ulo;
  return s;
}

}  // namespace sobrep
