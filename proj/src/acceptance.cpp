#include "sobrep/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "sobrep/enveloping.hpp"
#include "sobrep/group_function.hpp"
#include "sobrep/harness.hpp"
#include "sobrep/representation.hpp"
#include "sobrep/sobolev.hpp"
#include "sobrep/spectral.hpp"

namespace sobrep {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Run {
  CriterionResult& r;
  bool ok = true;

  void metric(const std::string& name, double value) { r.metrics.emplace_back(name, value); }
  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += what;
    }
  }
};

bool finite_positive(const std::vector<double>& x) {
  for (double v : x)
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  return true;
}

Eigen::VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

// 1: d pi(uv) = d pi(u) d pi(v) on spin 2.
void pbw_homomorphism(Run& run, std::uint64_t seed) {
  const auto rep = Representation::su2_irrep(2.0);
  const auto& alg = rep.algebra();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const auto monos = monomials_up_to(alg->dim(), 3);
  const auto random_element = [&] {
    EnvelopingElement u(alg);
    for (const auto& m : monos) u.add_term(m, Complex(g(rng), g(rng)));
    return u;
  };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const EnvelopingElement u = random_element(), v = random_element();
    const Eigen::MatrixXcd du = d_pi(rep, u), dv = d_pi(rep, v);
    const double err = (d_pi(rep, u * v) - du * dv).norm();
    worst = std::max(worst, err / (1.0 + du.norm() * dv.norm()));
  }
  run.metric("scaled_err", worst);
  run.metric("scaled_err_tol", 1e-9);
  run.require(worst <= 1e-9, "homomorphism defect above 1e-9");
}

// 2: d pi(Delta) = l(l+1) I for l <= 5.
void casimir_scalarity(Run& run) {
  double worst = 0.0;
  bool ok = true;
  for (int two_l = 0; two_l <= 10; ++two_l) {
    const double l = 0.5 * two_l;
    const double expected = l * (l + 1.0);
    const auto rep = Representation::su2_irrep(l);
    const Eigen::MatrixXcd L = d_pi(rep, laplace_element(rep.algebra()));
    const double err = (L - expected * Eigen::MatrixXcd::Identity(L.rows(), L.cols())).norm();
    if (err > 1e-10 * expected) ok = false;
    if (expected > 0.0) worst = std::max(worst, err / expected);
  }
  run.metric("rel_err", worst);
  run.metric("rel_err_tol", 1e-10);
  run.require(ok, "Casimir differs from l(l+1) I");
}

// 3: Euclidean and torus kernels of (1 + Delta)^{-1}.
void kernel_closed_forms(Run& run) {
  const auto f = SpectralFunction::resolvent_power(1.0, 1);
  const Kernel ke = kernel(GroupModel::euclidean(1, 40.0, 4096), f);
  double euclid = 0.0;
  for (int i = 0; i <= 990; ++i) {
    const double x = 0.1 + 0.01 * i;
    const double exact = 0.5 * std::exp(-x);
    for (double sx : {x, -x}) {
      euclid = std::max(euclid, std::abs(kernel_value(ke, Eigen::VectorXd::Constant(1, sx)) - exact) / exact);
    }
  }
  const Kernel kt = kernel(GroupModel::torus(1, 256), f);
  double torus = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = -kPi + 2.0 * kPi * i / 1000.0;
    const double exact = std::cosh(kPi - std::abs(t)) / (2.0 * std::sinh(kPi));
    torus = std::max(torus, std::abs(kernel_value(kt, Eigen::VectorXd::Constant(1, t)) - exact));
  }
  run.metric("euclid_rel_err", euclid);
  run.metric("euclid_rel_err_tol", 1e-6);
  run.metric("torus_abs_err", torus);
  run.metric("torus_abs_err_tol", 1e-8);
  run.require(euclid <= 1e-6, "Euclidean kernel off e^{-|x|}/2");
  run.require(torus <= 1e-8, "torus kernel off the lattice-sum closed form");
}

// 4: phi = [(R^2 + Delta)^m phi] * kappa on band-limited functions.
void delta_factorization(Run& run, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto torus = GroupModel::torus(1, 64);
  const auto f1 = SpectralFunction::resolvent_power(1.0, 1);
  double t_res = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    SpectralData s;
    s.fourier = Eigen::VectorXcd::Zero(64);
    const Eigen::VectorXcd c = random_vector(33, rng);
    for (int k = -16; k <= 16; ++k) s.fourier(k >= 0 ? k : 64 + k) = c(k + 16);
    t_res = std::max(t_res, delta_factorization_residual(torus, f1, GroupFunction::from_spectral(torus, s)));
  }
  const auto su2 = GroupModel::su2(12);
  const auto f2 = SpectralFunction::resolvent_power(1.0, 2);
  double s_res = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    SpectralData s;
    for (int tj = 0; tj <= su2->su2_band_two_j(); ++tj) {
      Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(tj + 1, tj + 1);
      if (tj <= 12) b = random_vector((tj + 1) * (tj + 1), rng).reshaped(tj + 1, tj + 1);
      s.blocks.push_back(b);
    }
    s_res = std::max(s_res, delta_factorization_residual(su2, f2, GroupFunction::from_spectral(su2, s)));
  }
  run.metric("torus_residual", t_res);
  run.metric("torus_residual_tol", 1e-8);
  run.metric("su2_residual", s_res);
  run.metric("su2_residual_tol", 1e-6);
  run.require(t_res <= 1e-8, "torus delta factorization residual above 1e-8");
  run.require(s_res <= 1e-6, "SU2 delta factorization residual above 1e-6");
}

// 5: v = Pi(kappa) d pi((R^2 + Delta)^m) v.
void vector_factorization(Run& run, std::uint64_t seed) {
  const auto scalar = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 0.5)});
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
  const double multiplier = d_pi(scalar, resolvent_element(scalar.algebra(), 1.0, 1))(0, 0).real();
  const Kernel k = kernel(scalar.model(), SpectralFunction::resolvent_power(1.0, 1));
  // int e^{-|x|} e^{x/2} dx / 2 = (1/(1 - 1/2) + 1/(1 + 1/2)) / 2
  const double smeared = smearing(scalar, k.smearing_function(), one)(0).real();
  const double e_res = vector_factorization_residual(scalar, one, 1.0, 1).residual;
  run.metric("multiplier_err", std::abs(multiplier - 0.75));
  run.metric("smeared_rel_err", std::abs(smeared - 4.0 / 3.0) / (4.0 / 3.0));
  run.metric("euclid_residual", e_res);

  std::mt19937_64 rng(seed);
  const auto torus = Representation::torus_regular(32);
  const double t_res = vector_factorization_residual(torus, random_vector(torus.dim(), rng), 1.0, 1).residual;
  run.metric("torus_residual", t_res);
  run.metric("residual_tol", 1e-6);
  run.require(std::abs(multiplier - 0.75) <= 1e-12, "d pi(R^2 + Delta) is not 0.75");
  run.require(std::abs(smeared - 4.0 / 3.0) <= 1e-6 * 4.0 / 3.0, "Pi(kappa) 1 differs from 4/3");
  run.require(e_res <= 1e-6, "Euclidean residual above 1e-6");
  run.require(t_res <= 1e-6, "torus residual above 1e-6");
}

// 6: sigma_min(R^2 + d pi(Delta)).
void spectral_gap_sharpness(Run& run) {
  const auto scalar = Representation::euclidean_matrix({Eigen::MatrixXcd::Constant(1, 1, 1.0)});
  const GapReport at1 = spectral_gap(scalar, 1.0);
  const GapReport at15 = spectral_gap(scalar, 1.5);
  run.metric("sigma_min_R1", at1.sigma_min);
  run.metric("sigma_min_R1_tol", 1e-12);
  run.metric("sigma_min_R1.5_err", std::abs(at15.sigma_min - 1.25));
  run.metric("sigma_min_R1.5_err_tol", 1e-10);
  run.require(at1.sigma_min <= 1e-12, "R = 1 not singular");
  run.require(std::abs(at15.sigma_min - 1.25) <= 1e-10, "R = 1.5 gap differs from 1.25");
  const auto torus = Representation::torus_regular(16);
  double worst = 0.0;
  for (double R : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const GapReport g = spectral_gap(torus, R);
    worst = std::max(worst, std::abs(g.sigma_min - R * R) / (R * R));
    run.require(g.invertible, fmt::format("torus not invertible at R = {}", R));
  }
  run.metric("torus_rel_err", worst);
  run.require(worst <= 1e-14, "torus sigma_min differs from R^2");
}

// 7: p_{2k} against Delta p_{2k} and Delta p_{2k+2} on the circle.
void sandwich(Run& run, std::uint64_t seed) {
  const double R = 1.0;
  double closed_err = 0.0, worst_spread = 0.0;
  bool positive = true;
  for (int k : {1, 2}) {
    std::vector<SandwichReport> reports;
    for (int N : {8, 16, 32}) {
      const auto rep = Representation::torus_regular(N);
      reports.push_back(sandwich_report(rep, k, R, make_ensemble(rep, 64, seed)));
      positive = positive && finite_positive(reports.back().lower_ratios) && finite_positive(reports.back().upper_ratios);
      const SandwichReport modes = sandwich_report(rep, k, R, basis_ensemble(rep));
      for (int i = 0; i <= 2 * N; ++i) {
        const double q = i - N;
        double p2 = 0.0;
        for (int j = 0; j <= 2 * k; ++j) p2 += std::pow(q * q, j);
        const double lo = std::sqrt(p2) / std::pow(R * R + q * q, k);
        const double hi = std::sqrt(p2) / std::pow(R * R + q * q, k + 1);
        closed_err = std::max(closed_err, std::abs(modes.lower_ratios[static_cast<std::size_t>(i)] - lo) / lo);
        closed_err = std::max(closed_err, std::abs(modes.upper_ratios[static_cast<std::size_t>(i)] - hi) / hi);
      }
    }
    const Stability st = stability(reports);
    run.metric(fmt::format("k{}_lower_spread", k), st.lower_spread);
    run.metric(fmt::format("k{}_upper_spread", k), st.upper_spread);
    worst_spread = std::max({worst_spread, st.lower_spread, st.upper_spread});
  }
  run.metric("spread_tol", 0.10);
  run.metric("closed_form_rel_err", closed_err);
  run.metric("closed_form_rel_err_tol", 1e-8);
  run.require(positive, "non-finite or non-positive ratio");
  run.require(closed_err <= 1e-8, "per-mode ratios off the closed form");
  run.require(worst_spread <= 0.10, "ratios move more than 10% across N");
}

// 8: Delta p_s against the localized H^s norm on the circle.
void induced_comparison(Run& run, std::uint64_t seed) {
  double worst = 0.0;
  bool ok = true;
  for (double s : {0.0, 1.0, 2.0}) {
    std::vector<SandwichReport> reports;
    for (int N : {8, 16}) {
      const auto rep = Representation::torus_regular(N);
      reports.push_back(compare_induced(rep, s, 0.5, make_ensemble(rep, 64, seed)));
      const auto& r = reports.back();
      ok = ok && r.lower > 0.0 && std::isfinite(r.lower) && std::isfinite(r.upper) &&
           finite_positive(r.lower_ratios) && finite_positive(r.upper_ratios);
    }
    const Stability st = stability(reports);
    run.metric(fmt::format("s{:g}_lower_spread", s), st.lower_spread);
    run.metric(fmt::format("s{:g}_upper_spread", s), st.upper_spread);
    worst = std::max({worst, st.lower_spread, st.upper_spread});
  }
  run.metric("spread_tol", 0.15);
  run.require(ok, "non-finite or non-positive ratio");
  run.require(worst <= 0.15, "ratios move more than 15% between N = 8 and 16");
}

// 9: regularity and decay of the two pieces of kappa.
void cgt_diagnostics(Run& run) {
  const auto model = GroupModel::euclidean(1, 40.0, 16384);
  const CgtSplit s1 = cgt_split(kernel(model, SpectralFunction::resolvent_power(1.0, 1)), 1.0);
  const HolderFit h = holder_exponent(s1.local_at, *model);
  const DecayFit d = tail_decay_rate(s1.tail);
  const CgtSplit s2 = cgt_split(kernel(model, SpectralFunction::resolvent_power(1.0, 2)), 1.0);
  const DerivativeJumps j = derivative_jumps(s2.local_at, *model);
  run.metric("holder_alpha", h.alpha);
  run.metric("decay_rate", d.rate);
  run.metric("m2_first_jump", j.first);
  run.metric("m2_second_jump", j.second);
  run.metric("m2_second_jump_tol", 1e-6);
  run.require(h.alpha >= 0.9 && h.alpha <= 1.0, "Hoelder exponent outside [0.9, 1.0]");
  run.require(std::abs(d.rate - 1.0) <= 0.05, "tail decay rate outside 1 +- 0.05");
  run.require(j.second <= 1e-6, "second derivative jumps at e");
}

// 10: dual-ball sup by sampling, negative-order sandwich.
void duality(Run& run, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXcd A(3, 3);
  for (int c = 0; c < 3; ++c) A.col(c) = random_vector(3, rng);
  const Eigen::MatrixXcd S = A.adjoint() * A + Eigen::MatrixXcd::Identity(3, 3);
  const auto rep = Representation::su2_irrep(1.0, VectorNorm::hermitian(S));
  const DualSobolev neg = DualSobolev::standard(rep, 1);
  const Eigen::VectorXcd v = random_vector(3, rng);
  const double exact = neg(v);
  double sampled = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Eigen::VectorXcd lambda = random_vector(3, rng);
    sampled = std::max(sampled, std::abs(lambda.cwiseProduct(v).sum()) / neg.dual_norm(lambda));
  }
  const double rel = std::abs(sampled - exact) / exact;
  run.metric("gram_value", exact);
  run.metric("sampled_sup", sampled);
  run.metric("rel_err", rel);
  run.metric("rel_err_tol", 0.02);
  run.require(rel <= 0.02, "sampled dual-ball sup off the Gram value by more than 2%");
  run.require(sampled <= exact * (1.0 + 1e-9), "sampled sup exceeds the Gram value");

  bool finite = true;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int k : {0, 1, 2}) {
    for (int N : {8, 16, 32}) {
      const auto t = Representation::torus_regular(N);
      const SandwichReport r = negative_sandwich(t, k, 1.0, make_ensemble(t, 64, seed));
      finite = finite && finite_positive(r.lower_ratios) && finite_positive(r.upper_ratios);
      lo = std::min(lo, r.lower);
      hi = std::max(hi, r.upper);
    }
  }
  run.metric("negative_min_lower", lo);
  run.metric("negative_max_upper", hi);
  run.require(finite, "negative sandwich ratio not finite and positive");
}

const char* criterion_name(int id) {
  static const char* names[] = {"pbw-homomorphism",     "casimir-scalarity",  "kernel-closed-forms",
                                "delta-factorization",  "vector-factorization", "spectral-gap",
                                "sandwich",             "induced-comparison", "cgt-diagnostics",
                                "duality"};
  return names[id - 1];
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) {
    throw Error(ErrorCode::invalid_argument, fmt::format("criterion must be in 1..{}, got {}", kCriterionCount, id));
  }
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  Run run{r};
  const auto t0 = Clock::now();
  try {
    switch (id) {
      case 1: pbw_homomorphism(run, seed); break;
      case 2: casimir_scalarity(run); break;
      case 3: kernel_closed_forms(run); break;
      case 4: delta_factorization(run, seed); break;
      case 5: vector_factorization(run, seed); break;
      case 6: spectral_gap_sharpness(run); break;
      case 7: sandwich(run, seed); break;
      case 8: induced_comparison(run, seed); break;
      case 9: cgt_diagnostics(run); break;
      case 10: duality(run, seed); break;
    }
  } catch (const std::exception& e) {
    run.require(false, fmt::format("error: {}", e.what()));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (id == 1) run.require(r.seconds < 5.0, "runtime above 5 s");
  if (id == 7) run.require(r.seconds < 30.0, "runtime above 30 s");
  r.pass = run.ok;
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::string line = fmt::format("{} {:2d} {:<22}", r.pass ? "PASS" : "FAIL", r.id, r.name);
  for (const auto& [k, v] : r.metrics) line += fmt::format(" {}={:.3e}", k, v);
  line += fmt::format(" ({:.2f} s)", r.seconds);
  if (!r.detail.empty()) line += " [" + r.detail + "]";
  return line;
}

}  // namespace sobrep
