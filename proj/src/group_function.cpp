#include "sobrep/group_function.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <fftw3.h>
#include <fmt/format.h>

namespace sobrep {

namespace {

constexpr double kPi = std::numbers::pi;

void fft_inplace(Eigen::VectorXcd& data, int rank, int m, int sign) {
  std::vector<int> dims(static_cast<std::size_t>(rank), m);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_dft(rank, dims.data(), ptr, ptr, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

Complex origin_phase(const GroupModel& model, std::size_t k, double sign) {
  const double x0 = model.grid_origin();
  if (x0 == 0.0) return 1.0;
  const double t = model.frequency(k).sum() * x0;
  return std::polar(1.0, sign * t);
}

void require_same_model(const GroupFunction& a, const GroupFunction& b) {
  if (!a.model()->same_as(*b.model())) {
    throw Error(ErrorCode::model_mismatch, "group functions live on different models");
  }
}

// Index into the m-grid used by the SU2 transforms: 2m in [-2J, 2J].
inline int m_slot(int two_m, int two_band) { return two_m + two_band; }

SpectralData su2_forward(const GroupModel& model, const Eigen::VectorXcd& values) {
  const int tb = model.su2_band_two_j();
  const int na = model.su2_alpha_count(), nb = model.su2_beta_count(), nc = model.su2_gamma_count();
  const int ms = 2 * tb + 1;
  const double da = 4.0 * kPi / na, dc = 4.0 * kPi / nc;

  // S[ib](slot(m_b), slot(m_a)) = sum_{alpha,gamma} w phi e^{i m_b alpha} e^{i m_a gamma}
  std::vector<Eigen::MatrixXcd> S(static_cast<std::size_t>(nb), Eigen::MatrixXcd::Zero(ms, ms));
  Eigen::MatrixXcd gamma_phase(nc, ms), alpha_phase(na, ms);
  for (int ic = 0; ic < nc; ++ic)
    for (int s = 0; s < ms; ++s) gamma_phase(ic, s) = std::polar(1.0, 0.5 * (s - tb) * ic * dc);
  for (int ia = 0; ia < na; ++ia)
    for (int s = 0; s < ms; ++s) alpha_phase(ia, s) = std::polar(1.0, 0.5 * (s - tb) * ia * da);

  for (int ib = 0; ib < nb; ++ib) {
    Eigen::MatrixXcd T(na, ms);  // sum over gamma
    for (int ia = 0; ia < na; ++ia) {
      const auto base = (static_cast<std::size_t>(ib) * na + ia) * nc;
      Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(ms);
      for (int ic = 0; ic < nc; ++ic) row += values(static_cast<Eigen::Index>(base + ic)) * gamma_phase.row(ic);
      T.row(ia) = row;
    }
    S[static_cast<std::size_t>(ib)] = alpha_phase.transpose() * T;
    S[static_cast<std::size_t>(ib)] *= 0.5 * da * dc * model.su2_beta_weights()[static_cast<std::size_t>(ib)];
  }

  SpectralData out;
  for (int tj = 0; tj <= tb; ++tj) {
    const int d = tj + 1;
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(d, d);
    for (int ib = 0; ib < nb; ++ib) {
      const Eigen::MatrixXd dj = model.wigner().small_d(tj, model.su2_betas()[static_cast<std::size_t>(ib)]);
      const auto& Sb = S[static_cast<std::size_t>(ib)];
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const int two_ma = tj - 2 * a, two_mb = tj - 2 * b;
          F(a, b) += dj(b, a) * Sb(m_slot(two_mb, tb), m_slot(two_ma, tb));
        }
    }
    out.blocks.push_back(std::move(F));
  }
  return out;
}

Eigen::VectorXcd su2_inverse(const GroupModel& model, const SpectralData& spec) {
  const int tb = model.su2_band_two_j();
  const int na = model.su2_alpha_count(), nb = model.su2_beta_count(), nc = model.su2_gamma_count();
  const int ms = 2 * tb + 1;
  const double da = 4.0 * kPi / na, dc = 4.0 * kPi / nc;
  const double V = model.haar_mass();
  if (static_cast<int>(spec.blocks.size()) > tb + 1) {
    throw Error(ErrorCode::band_limit_exceeded, "spectral blocks exceed the SU2 model band");
  }

  Eigen::MatrixXcd gamma_phase(ms, nc), alpha_phase(na, ms);
  for (int ic = 0; ic < nc; ++ic)
    for (int s = 0; s < ms; ++s) gamma_phase(s, ic) = std::polar(1.0, -0.5 * (s - tb) * ic * dc);
  for (int ia = 0; ia < na; ++ia)
    for (int s = 0; s < ms; ++s) alpha_phase(ia, s) = std::polar(1.0, -0.5 * (s - tb) * ia * da);

  Eigen::VectorXcd values(static_cast<Eigen::Index>(model.node_count()));
  for (int ib = 0; ib < nb; ++ib) {
    // U(slot(m_b), slot(m_a)) = (1/V) sum_j d_j F_ab d_ba(beta)
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(ms, ms);
    for (int tj = 0; tj < static_cast<int>(spec.blocks.size()); ++tj) {
      const auto& F = spec.blocks[static_cast<std::size_t>(tj)];
      const Eigen::MatrixXd dj = model.wigner().small_d(tj, model.su2_betas()[static_cast<std::size_t>(ib)]);
      const int d = tj + 1;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          U(m_slot(tj - 2 * b, tb), m_slot(tj - 2 * a, tb)) += (d / V) * F(a, b) * dj(b, a);
    }
    const Eigen::MatrixXcd grid = alpha_phase * U * gamma_phase;  // na x nc
    for (int ia = 0; ia < na; ++ia)
      for (int ic = 0; ic < nc; ++ic)
        values(static_cast<Eigen::Index>((static_cast<std::size_t>(ib) * na + ia) * nc + ic)) = grid(ia, ic);
  }
  return values;
}

Complex su2_evaluate(const GroupModel& model, const SpectralData& spec, const su2::Euler& e) {
  Complex s = 0.0;
  for (int tj = 0; tj < static_cast<int>(spec.blocks.size()); ++tj) {
    const Eigen::MatrixXcd D = model.wigner().big_d(tj, e);
    s += static_cast<double>(tj + 1) * (spec.blocks[static_cast<std::size_t>(tj)] * D).trace();
  }
  return s / model.haar_mass();
}

}  // namespace

SpectralData forward_transform(const GroupModel& model, const Eigen::VectorXcd& values) {
  if (static_cast<std::size_t>(values.size()) != model.node_count()) {
    throw Error(ErrorCode::model_mismatch, "nodal data size does not match the model");
  }
  if (model.kind() == GroupKind::su2) return su2_forward(model, values);
  SpectralData out;
  out.fourier = values;
  fft_inplace(out.fourier, model.dim(), model.nodes_per_axis(), FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(model.node_count());
  for (Eigen::Index k = 0; k < out.fourier.size(); ++k) {
    out.fourier(k) *= scale * origin_phase(model, static_cast<std::size_t>(k), -1.0);
  }
  return out;
}

Eigen::VectorXcd inverse_transform(const GroupModel& model, const SpectralData& spectral) {
  if (model.kind() == GroupKind::su2) return su2_inverse(model, spectral);
  if (static_cast<std::size_t>(spectral.fourier.size()) != model.node_count()) {
    throw Error(ErrorCode::model_mismatch, "spectral data size does not match the model");
  }
  Eigen::VectorXcd v = spectral.fourier;
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) *= origin_phase(model, static_cast<std::size_t>(k), 1.0);
  fft_inplace(v, model.dim(), model.nodes_per_axis(), FFTW_BACKWARD);
  return v;
}

GroupFunction::GroupFunction(ModelPtr model, Eigen::VectorXcd values, std::optional<SpectralData> spectral)
    : model_(std::move(model)), values_(std::move(values)), spectral_(std::move(spectral)) {
  if (static_cast<std::size_t>(values_.size()) != model_->node_count()) {
    throw Error(ErrorCode::model_mismatch, "nodal data size does not match the model");
  }
}

GroupFunction GroupFunction::from_function(const ModelPtr& model,
                                           const std::function<Complex(const Eigen::VectorXd&)>& f) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(model->node_count()));
  for (std::size_t i = 0; i < model->node_count(); ++i) v(static_cast<Eigen::Index>(i)) = f(model->node(i));
  return GroupFunction(model, std::move(v));
}

GroupFunction GroupFunction::from_spectral(const ModelPtr& model, SpectralData spectral) {
  Eigen::VectorXcd v = inverse_transform(*model, spectral);
  return GroupFunction(model, std::move(v), std::move(spectral));
}

SpectralData GroupFunction::spectral() const {
  if (spectral_) return *spectral_;
  return forward_transform(*model_, values_);
}

Complex GroupFunction::evaluate(const Eigen::VectorXd& coords) const {
  const auto& m = *model_;
  if (coords.size() != m.dim() || !coords.allFinite()) {
    throw Error(ErrorCode::malformed_coordinates, "bad coordinates for evaluation");
  }
  if (m.kind() == GroupKind::su2) {
    return su2_evaluate(m, spectral(), {coords(0), coords(1), coords(2)});
  }
  // On-grid shortcut.
  bool on_grid = true;
  std::size_t idx = 0;
  const auto M = static_cast<std::size_t>(m.nodes_per_axis());
  for (int d = 0; d < m.dim() && on_grid; ++d) {
    double t = (coords(d) - m.grid_origin()) / m.grid_step();
    if (m.kind() == GroupKind::torus) t = std::fmod(std::fmod(t, static_cast<double>(M)) + M, static_cast<double>(M));
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-12 || r < 0 || r >= static_cast<double>(M)) {
      on_grid = false;
    } else {
      idx = idx * M + static_cast<std::size_t>(r) % M;
    }
  }
  if (on_grid) return values_(static_cast<Eigen::Index>(idx));
  const SpectralData s = spectral();
  Complex sum = 0.0;
  for (std::size_t k = 0; k < m.node_count(); ++k) {
    if (m.is_nyquist(k)) continue;
    sum += s.fourier(static_cast<Eigen::Index>(k)) * std::polar(1.0, m.frequency(k).dot(coords));
  }
  return sum;
}

double band_excess(const GroupFunction& phi) {
  const auto& m = *phi.model();
  SpectralData s = phi.spectral();
  if (m.kind() != GroupKind::su2) {
    for (std::size_t k = 0; k < m.node_count(); ++k)
      if (m.is_nyquist(k)) s.fourier(static_cast<Eigen::Index>(k)) = 0.0;
  }
  const Eigen::VectorXcd back = inverse_transform(m, s);
  const double scale = phi.values().cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (back - phi.values()).cwiseAbs().maxCoeff() / scale;
}

GroupFunction apply_multiplier(const GroupFunction& phi, const std::function<double(double)>& mult) {
  const auto& m = *phi.model();
  SpectralData s = phi.spectral();
  if (m.kind() == GroupKind::su2) {
    for (std::size_t tj = 0; tj < s.blocks.size(); ++tj) s.blocks[tj] *= mult(m.laplace_eigenvalue(tj));
  } else {
    for (std::size_t k = 0; k < m.node_count(); ++k) {
      s.fourier(static_cast<Eigen::Index>(k)) *= mult(m.laplace_eigenvalue(k));
    }
  }
  return GroupFunction::from_spectral(phi.model(), std::move(s));
}

GroupFunction convolve(const GroupFunction& phi, const GroupFunction& psi, ConvolutionPath path) {
  require_same_model(phi, psi);
  const auto& model = phi.model();
  const auto& m = *model;

  if (path == ConvolutionPath::spectral) {
    SpectralData a = phi.spectral();
    const SpectralData b = psi.spectral();
    if (m.kind() == GroupKind::su2) {
      for (std::size_t tj = 0; tj < a.blocks.size(); ++tj) a.blocks[tj] = b.blocks[tj] * a.blocks[tj];
    } else {
      a.fourier = m.haar_mass() < std::numeric_limits<double>::infinity()
                      ? (m.haar_mass() * a.fourier.array() * b.fourier.array()).matrix()
                      : (std::pow(m.period(), m.dim()) * a.fourier.array() * b.fourier.array()).matrix();
    }
    return GroupFunction::from_spectral(model, std::move(a));
  }

  const std::size_t count = m.node_count();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(count));
  if (m.kind() == GroupKind::su2) {
    const SpectralData psi_spec = psi.spectral();
    std::vector<Eigen::Matrix2cd> mats(count);
    for (std::size_t j = 0; j < count; ++j) mats[j] = m.su2_node_matrix(j);
    for (std::size_t i = 0; i < count; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < count; ++j) {
        const Complex pj = phi.values()(static_cast<Eigen::Index>(j));
        if (pj == Complex(0.0)) continue;
        const auto e = su2::euler_of(mats[j].adjoint() * mats[i]);
        s += m.weights()[j] * pj * su2_evaluate(m, psi_spec, e);
      }
      out(static_cast<Eigen::Index>(i)) = s;
    }
    return GroupFunction(model, std::move(out));
  }

  const int M = m.nodes_per_axis();
  const int n = m.dim();
  auto digits = [&](std::size_t idx, std::vector<int>& dg) {
    for (int d = n - 1; d >= 0; --d) {
      dg[static_cast<std::size_t>(d)] = static_cast<int>(idx % static_cast<std::size_t>(M));
      idx /= static_cast<std::size_t>(M);
    }
  };
  std::vector<int> di(static_cast<std::size_t>(n)), dj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < count; ++i) {
    digits(i, di);
    Complex s = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      digits(j, dj);
      std::size_t idx = 0;
      bool inside = true;
      for (int d = 0; d < n; ++d) {
        int r = di[static_cast<std::size_t>(d)] - dj[static_cast<std::size_t>(d)];
        if (m.kind() == GroupKind::torus) {
          r = ((r % M) + M) % M;
        } else {
          r += M / 2;
          if (r < 0 || r >= M) {
            inside = false;
            break;
          }
        }
        idx = idx * static_cast<std::size_t>(M) + static_cast<std::size_t>(r);
      }
      if (!inside) continue;
      s += m.weights()[j] * phi.values()(static_cast<Eigen::Index>(j)) * psi.values()(static_cast<Eigen::Index>(idx));
    }
    out(static_cast<Eigen::Index>(i)) = s;
  }
  return GroupFunction(model, std::move(out));
}

double fitted_decay_rate(const GroupFunction& phi) {
  const auto& m = *phi.model();
  if (m.compact()) return std::numeric_limits<double>::infinity();
  const double L = m.half_width();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const double d = m.node_distance(i);
    if (d < 0.5 * L || d > L) continue;
    const double a = std::abs(phi.values()(static_cast<Eigen::Index>(i)));
    if (!(a > 1e-300)) continue;
    const double y = -std::log(a);
    sx += d;
    sy += y;
    sxx += d * d;
    sxy += d * y;
    ++cnt;
  }
  if (cnt < 2) return std::numeric_limits<double>::infinity();
  const double c = static_cast<double>(cnt);
  const double den = c * sxx - sx * sx;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return (c * sxy - sx * sy) / den;
}

WeightedNorm weighted_L1_norm(const GroupFunction& phi, double R) {
  const auto& m = *phi.model();
  WeightedNorm out;
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    out.value += m.weights()[i] * std::abs(phi.values()(static_cast<Eigen::Index>(i))) *
                 std::exp(R * m.node_distance(i));
  }
  out.decay_rate = fitted_decay_rate(phi);
  if (!m.compact()) out.converged = out.decay_rate > R + 1e-6 * std::max(1.0, std::abs(R));
  return out;
}

IntegrabilityWitness c_G(const GroupModel& model, double C) {
  IntegrabilityWitness w;
  w.c_G = 0.0;
  w.C = C;
  if (!model.compact() && !(C > 0.0)) {
    w.integral = std::numeric_limits<double>::infinity();
    return w;
  }
  for (std::size_t i = 0; i < model.node_count(); ++i) {
    w.integral += model.weights()[i] * std::exp(-C * model.node_distance(i));
  }
  return w;
}

void write_csv(std::ostream& os, const GroupFunction& phi) {
  const auto& m = *phi.model();
  for (int d = 0; d < m.dim(); ++d) os << "x" << d << ",";
  os << "real,imag\n";
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const auto x = m.node(i);
    for (int d = 0; d < m.dim(); ++d) os << fmt::format("{:.16e},", x(d));
    const Complex v = phi.values()(static_cast<Eigen::Index>(i));
    os << fmt::format("{:.16e},{:.16e}\n", v.real(), v.imag());
  }
}

GroupFunction read_csv(std::istream& is, const ModelPtr& model) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::invalid_argument, "empty CSV");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(model->node_count()));
  std::size_t i = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (i >= model->node_count()) throw Error(ErrorCode::model_mismatch, "CSV has more rows than nodes");
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (static_cast<int>(cols.size()) != model->dim() + 2) {
      throw Error(ErrorCode::invalid_argument, fmt::format("CSV row {} has {} columns", i + 1, cols.size()));
    }
    const auto x = model->node(i);
    for (int d = 0; d < model->dim(); ++d)
      if (std::abs(cols[static_cast<std::size_t>(d)] - x(d)) > 1e-9 * (1.0 + std::abs(x(d)))) {
        throw Error(ErrorCode::model_mismatch, fmt::format("CSV row {} does not match node coordinates", i + 1));
      }
    v(static_cast<Eigen::Index>(i)) = Complex(cols[static_cast<std::size_t>(model->dim())],
                                              cols[static_cast<std::size_t>(model->dim()) + 1]);
    ++i;
  }
  if (i != model->node_count()) throw Error(ErrorCode::model_mismatch, "CSV has fewer rows than nodes");
  return GroupFunction(model, std::move(v));
}

}  // namespace sobrep
