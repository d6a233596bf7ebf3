#include "sobrep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <fmt/format.h>

#include "sobrep/su2_spin.hpp"

namespace sobrep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailBudget = 1e-12;

struct LatticePlan {
  int shells = 0;
  double tail = 0.0;
};

// Smallest shell radius S such that the lattice terms with |l|_inf > S sum
// below the budget for every theta in [-pi, pi]^n.
LatticePlan torus_plan(int n, double R, int m, std::size_t nodes) {
  constexpr int kMaxShell = 200000;
  std::vector<double> terms{0.0};
  for (int s = 1; s <= kMaxShell; ++s) {
    const double count = std::pow(2.0 * s + 1.0, n) - std::pow(2.0 * s - 1.0, n);
    const double t = count * euclidean_kernel(n, R, m, kPi * (2.0 * s - 1.0));
    terms.push_back(t);
    if (t < 1e-30 && s > 2) break;
  }
  if (terms.back() >= 1e-30) {
    throw Error(ErrorCode::truncation_budget_exceeded,
                fmt::format("lattice sum for R={} m={} does not converge within {} shells", R, m, kMaxShell));
  }
  std::vector<double> suffix(terms.size() + 1, 0.0);
  for (std::size_t s = terms.size(); s-- > 0;) suffix[s] = suffix[s + 1] + terms[s];
  LatticePlan plan;
  for (std::size_t S = 0; S + 1 < suffix.size(); ++S) {
    if (suffix[S + 1] < kTailBudget) {
      plan.shells = static_cast<int>(S);
      plan.tail = suffix[S + 1];
      break;
    }
  }
  const double work = std::pow(2.0 * plan.shells + 1.0, n) * static_cast<double>(nodes);
  if (work > 5e8) {
    throw Error(ErrorCode::truncation_budget_exceeded,
                fmt::format("lattice sum needs {} shells in dimension {}; work {} exceeds the budget", plan.shells, n,
                            work));
  }
  return plan;
}

double torus_value(int n, double R, int m, const Eigen::VectorXd& theta, int shells) {
  Eigen::VectorXd t(n);
  for (int d = 0; d < n; ++d) t(d) = std::remainder(theta(d), 2.0 * kPi);
  const int side = 2 * shells + 1;
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(side);
  double s = 0.0;
  Eigen::VectorXd x(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = 0; d < n; ++d) {
      const int l = static_cast<int>(rem % static_cast<std::size_t>(side)) - shells;
      rem /= static_cast<std::size_t>(side);
      x(d) = t(d) + 2.0 * kPi * l;
    }
    s += euclidean_kernel(n, R, m, x.norm());
  }
  return s;
}

double su2_value(const SpectralFunction& f, int max_two_j, double omega, double mass) {
  double s = 0.0;
  for (int tj = 0; tj <= max_two_j; ++tj) s += (tj + 1.0) * f.at_eigenvalue(su2::casimir(tj)) * su2::character(tj, omega);
  return s / mass;
}

double su2_tail(const SpectralFunction& f, int max_two_j) {
  // (2l+1)^2 f(l) ~ 4 l^{2-2m}: summable over the half-integer lattice iff m >= 2.
  if (f.m() < 2) return kInf;
  constexpr int kTerms = 200000;
  double s = 0.0;
  const int last = max_two_j + kTerms;
  for (int tj = max_two_j + 1; tj <= last; ++tj) s += (tj + 1.0) * (tj + 1.0) * f.at_eigenvalue(su2::casimir(tj));
  // Remainder: two_j density 2 per unit spin, integrand 4 l^{2-2m}.
  const double l0 = 0.5 * last;
  s += 8.0 * std::pow(l0, 3.0 - 2.0 * f.m()) / (2.0 * f.m() - 3.0);
  return s;
}

void require_bounded_at_e(const GroupModel& model, const SpectralFunction& f) {
  if (model.kind() != GroupKind::su2 && 2 * f.m() <= model.dim()) {
    throw Error(ErrorCode::unsupported,
                fmt::format("kernel of order {} is unbounded at e in dimension {} (need 2m > n)", f.order(),
                            model.dim()));
  }
}

}  // namespace

SpectralFunction SpectralFunction::resolvent_power(double R, int m, std::optional<double> R_prime) {
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::invalid_argument, fmt::format("R must be positive, got {}", R));
  if (m < 1) throw Error(ErrorCode::invalid_argument, fmt::format("m must be a positive integer, got {}", m));
  SpectralFunction f;
  f.R_ = R;
  f.m_ = m;
  f.R_prime_ = R_prime.value_or(R);
  if (R_prime && !(*R_prime >= R)) {
    throw Error(ErrorCode::invalid_argument, fmt::format("analyticity margin R'={} is below R={}", *R_prime, R));
  }
  return f;
}

double SpectralFunction::operator()(double z) const { return std::pow(R_ * R_ + z * z, -m_); }

double SpectralFunction::at_eigenvalue(double lambda) const { return std::pow(R_ * R_ + lambda, -m_); }

double euclidean_kernel(int n, double R, int m, double r) {
  const double nu = m - 0.5 * n;
  if (r == 0.0) {
    if (nu <= 0.0) return kInf;
    return std::tgamma(nu) / (std::pow(4.0 * kPi, 0.5 * n) * std::tgamma(m) * std::pow(R, 2.0 * nu));
  }
  const double z = R * r;
  if (z > 700.0) return 0.0;
  const double pre = std::pow(2.0 * kPi, -0.5 * n) * std::pow(2.0, 1.0 - m) / std::tgamma(m);
  return pre * std::pow(r / R, nu) * std::cyl_bessel_k(std::abs(nu), z);
}

GroupFunction Kernel::band_limited() const { return GroupFunction::from_spectral(model, coefficients); }

GroupFunction Kernel::smearing_function() const { return model->compact() ? band_limited() : values; }

Kernel kernel(const ModelPtr& model, const SpectralFunction& f) {
  const auto& m = *model;
  require_bounded_at_e(m, f);

  SpectralData coeff;
  Eigen::VectorXcd vals(static_cast<Eigen::Index>(m.node_count()));
  double tail = 0.0;
  double l_max = 0.0;

  if (m.kind() == GroupKind::su2) {
    const int tb = m.su2_band_two_j();
    for (int tj = 0; tj <= tb; ++tj) {
      coeff.blocks.push_back(f.at_eigenvalue(su2::casimir(tj)) * Eigen::MatrixXcd::Identity(tj + 1, tj + 1));
    }
    for (std::size_t i = 0; i < m.node_count(); ++i) {
      vals(static_cast<Eigen::Index>(i)) = su2_value(f, tb, 0.5 * m.node_distance(i), m.haar_mass());
    }
    tail = su2_tail(f, tb);
    l_max = m.su2_band();
  } else {
    const double cell = m.kind() == GroupKind::torus ? m.haar_mass() : std::pow(m.period(), m.dim());
    coeff.fourier.resize(static_cast<Eigen::Index>(m.node_count()));
    for (std::size_t k = 0; k < m.node_count(); ++k) {
      coeff.fourier(static_cast<Eigen::Index>(k)) =
          m.is_nyquist(k) ? 0.0 : f.at_eigenvalue(m.laplace_eigenvalue(k)) / cell;
    }
    if (m.kind() == GroupKind::torus) {
      const LatticePlan plan = torus_plan(m.dim(), f.R(), f.m(), m.node_count());
      for (std::size_t i = 0; i < m.node_count(); ++i) {
        vals(static_cast<Eigen::Index>(i)) = torus_value(m.dim(), f.R(), f.m(), m.node(i), plan.shells);
      }
      tail = plan.tail;
    } else {
      for (std::size_t i = 0; i < m.node_count(); ++i) {
        vals(static_cast<Eigen::Index>(i)) = euclidean_kernel(m.dim(), f.R(), f.m(), m.node_distance(i));
      }
    }
    l_max = m.fourier_band();
  }
  return Kernel{model, f, std::move(coeff), GroupFunction(model, std::move(vals)), tail, l_max};
}

double kernel_value(const Kernel& k, const Eigen::VectorXd& coords) {
  const auto& m = *k.model;
  const double d = m.distance(coords);
  switch (m.kind()) {
    case GroupKind::euclidean: return euclidean_kernel(m.dim(), k.f.R(), k.f.m(), d);
    case GroupKind::torus: {
      const LatticePlan plan = torus_plan(m.dim(), k.f.R(), k.f.m(), 1);
      return torus_value(m.dim(), k.f.R(), k.f.m(), coords, plan.shells);
    }
    case GroupKind::su2: return su2_value(k.f, m.su2_band_two_j(), 0.5 * d, m.haar_mass());
  }
  return 0.0;
}

double cutoff(double d, double epsilon) {
  const double half = 0.5 * epsilon;
  if (d <= half) return 1.0;
  if (d >= epsilon) return 0.0;
  const double s = (d - half) / half;
  const auto g = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double a = g(1.0 - s), b = g(s);
  return a / (a + b);
}

CgtSplit cgt_split(const Kernel& k, double epsilon) {
  const auto& m = *k.model;
  if (!(epsilon > 0.0) || !(epsilon < m.injectivity_scale())) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("epsilon must lie in (0, {}) on a {} model, got {}", m.injectivity_scale(),
                            to_string(m.kind()), epsilon));
  }
  const Eigen::Index count = static_cast<Eigen::Index>(m.node_count());
  Eigen::VectorXcd local(count), tail(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const Complex v = k.values.values()(i);
    local(i) = cutoff(m.node_distance(static_cast<std::size_t>(i)), epsilon) * v;
    tail(i) = v - local(i);
  }
  auto shared = std::make_shared<const Kernel>(k);
  auto local_at = [shared, epsilon](const Eigen::VectorXd& x) {
    const double c = cutoff(shared->model->distance(x), epsilon);
    return c == 0.0 ? 0.0 : c * kernel_value(*shared, x);
  };
  auto tail_at = [shared, epsilon](const Eigen::VectorXd& x) {
    const double c = cutoff(shared->model->distance(x), epsilon);
    return c == 1.0 ? 0.0 : (1.0 - c) * kernel_value(*shared, x);
  };
  return CgtSplit{epsilon, GroupFunction(k.model, std::move(local)), GroupFunction(k.model, std::move(tail)),
                  local_at, tail_at};
}

DecayFit tail_decay_rate(const GroupFunction& kappa2, double lo, double hi) {
  const auto& m = *kappa2.model();
  if (m.compact()) {
    throw Error(ErrorCode::unsupported,
                fmt::format("tail decay is meaningless on the compact {} model", to_string(m.kind())));
  }
  if (!(hi > lo) || lo < 0.0) throw Error(ErrorCode::invalid_argument, "decay window must satisfy 0 <= lo < hi");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const double d = m.node_distance(i);
    if (d < lo || d > hi) continue;
    const double a = std::abs(kappa2.values()(static_cast<Eigen::Index>(i)));
    if (!(a > 1e-300)) continue;
    xs.push_back(d);
    ys.push_back(-std::log(a));
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::invalid_argument, fmt::format("fewer than two usable samples in [{}, {}]", lo, hi));
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(xs.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    A(static_cast<Eigen::Index>(i), 0) = 1.0;
    A(static_cast<Eigen::Index>(i), 1) = xs[i];
    b(static_cast<Eigen::Index>(i)) = ys[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  DecayFit fit;
  fit.rate = c(1);
  fit.samples = xs.size();
  fit.residual = (A * c - b).norm() / std::sqrt(static_cast<double>(xs.size()));
  return fit;
}

HolderFit holder_exponent(const std::function<double(const Eigen::VectorXd&)>& g, const GroupModel& model) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(model.dim());
  const double g0 = g(x);
  HolderFit fit;
  std::vector<double> lx, ly;
  for (int j = 3; j <= 10; ++j) {
    const double h = std::ldexp(1.0, -j);
    x(0) = h;
    const double gp = g(x);
    x(0) = -h;
    const double gm = g(x);
    const double d2 = std::abs(gp - 2.0 * g0 + gm);
    fit.samples.emplace_back(h, d2);
    if (d2 > 0.0) {
      lx.push_back(std::log(h));
      ly.push_back(std::log(d2));
    }
  }
  if (lx.size() < 2) {
    fit.alpha = 2.0;
    fit.saturated = true;
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  fit.alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.saturated = fit.alpha > 1.95;
  return fit;
}

DerivativeJumps derivative_jumps(const std::function<double(const Eigen::VectorXd&)>& g, const GroupModel& model,
                                 double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "step must be positive");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(model.dim());
  const auto at = [&](double t) {
    x(0) = t;
    return g(x);
  };
  const double f0 = at(0.0);
  const double p1 = at(h), p2 = at(2 * h), p3 = at(3 * h);
  const double m1 = at(-h), m2 = at(-2 * h), m3 = at(-3 * h);
  const double d1p = (-3 * f0 + 4 * p1 - p2) / (2 * h);
  const double d1m = (3 * f0 - 4 * m1 + m2) / (2 * h);
  const double d2p = (2 * f0 - 5 * p1 + 4 * p2 - p3) / (h * h);
  const double d2m = (2 * f0 - 5 * m1 + 4 * m2 - m3) / (h * h);
  return {std::abs(d1p - d1m), std::abs(d2p - d2m)};
}

double delta_factorization_residual(const ModelPtr& model, const SpectralFunction& f, const GroupFunction& phi) {
  if (!model->same_as(*phi.model())) throw Error(ErrorCode::model_mismatch, "phi lives on a different model");
  const double excess = band_excess(phi);
  if (excess > 1e-10) {
    throw Error(ErrorCode::band_limit_exceeded,
                fmt::format("phi exceeds the model band (relative excess {:.3e})", excess));
  }
  const Kernel k = kernel(model, f);
  const double R2 = f.R() * f.R();
  const int m = f.m();
  const GroupFunction lifted = apply_multiplier(phi, [R2, m](double lambda) { return std::pow(R2 + lambda, m); });
  const GroupFunction back = convolve(lifted, k.band_limited(), ConvolutionPath::spectral);
  return (back.values() - phi.values()).cwiseAbs().maxCoeff();
}

}  // namespace sobrep
