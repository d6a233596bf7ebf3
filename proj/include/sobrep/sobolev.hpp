#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobrep/representation.hpp"

namespace sobrep {

enum class NormFamily { standard, laplace, induced, negative };

std::string to_string(NormFamily family);
NormFamily norm_family_from_string(const std::string& s);

struct NormReport {
  NormFamily family = NormFamily::standard;
  double order = 0.0;
  double R = 0.0;  // laplace family only
  double value = 0.0;
  std::map<std::string, double> diagnostics;
};

/// p_k(v)^2 = sum over PBW monomials of degree <= k of p(D^mono v)^2, for an
/// arbitrary list of generator matrices (used for basis changes).
class StandardSobolev {
 public:
  StandardSobolev(const std::vector<Eigen::MatrixXcd>& generators, VectorNorm norm, int k);
  StandardSobolev(const Representation& rep, int k) : StandardSobolev(rep.generators(), rep.norm(), k) {}

  int order() const noexcept { return k_; }
  double operator()(const Eigen::VectorXcd& v) const;
  /// Monomial matrices in graded-lex order.
  const std::vector<Eigen::MatrixXcd>& monomial_matrices() const noexcept { return mats_; }
  /// S_k = sum D^{mono *} S D^mono (Hermitian norms only).
  Eigen::MatrixXcd gram() const;

 private:
  int k_;
  VectorNorm norm_;
  std::vector<Eigen::MatrixXcd> mats_;
};

double standard_sobolev(const Representation& rep, const Eigen::VectorXcd& v, int k);

/// p(d pi((R^2 + Delta)^{k/2}) v) for even k.
double laplace_sobolev_even(const Representation& rep, const Eigen::VectorXcd& v, int k, double R);

struct LaplacePower {
  Eigen::MatrixXcd matrix;    // M^{s/2}, M = R^2 I + d pi(Delta)
  Eigen::VectorXcd eigenvalues;
  double condition = 1.0;     // condition number of the eigenvector matrix
};

/// Principal fractional power through an eigendecomposition of M.
/// Throws Error{defective_matrix} when the eigenvector matrix has condition
/// number above 1e12, Error{branch_cut} when an eigenvalue lies on (-inf, 0].
LaplacePower laplace_power(const Representation& rep, double s, double R);

double laplace_sobolev(const Representation& rep, const Eigen::VectorXcd& v, double s, double R);

struct InducedOptions {
  int grid_points = 256;  // per axis on [-1, 1]
  int padding = 2;
  int ascent_starts = 16;  // l1 norms only
  std::uint64_t seed = 11;
};

/// bump(x) = exp(1 - 1 / (1 - |x|^2)) on the unit ball, bump(0) = 1.
double bump(const Eigen::VectorXd& x);

/// Sp_s(v) = sup over the dual unit ball of ||bump * lambda(pi(.) v)||_{H^s}.
/// Built once per (rep, v); value(s) reweights the stored Fourier data.
class InducedSobolev {
 public:
  InducedSobolev(const Representation& rep, const Eigen::VectorXcd& v, const InducedOptions& opts = {});

  double value(double s) const;

 private:
  VectorNorm norm_;
  InducedOptions opts_;
  Eigen::MatrixXcd raw_;       // unweighted coefficients, one row per frequency
  Eigen::VectorXd xi2_;        // |xi|^2 per row
};

/// Sp_s as a function of v.  Stores the transforms of bump * pi(.)_{ab} for
/// every matrix entry, so the coefficient matrix is linear in v.
class InducedOperator {
 public:
  /// Throws Error{unsupported} on SU2 models or when the stored transforms
  /// would exceed the memory budget.
  InducedOperator(const Representation& rep, const InducedOptions& opts = {});

  /// Sp_s(v).  For Hermitian norms, `gradient` (if given) receives
  /// 2 dSp_s / d conj(v) at a point where the top singular value is simple.
  double value(const Eigen::VectorXcd& v, double s, Eigen::VectorXcd* gradient = nullptr) const;

 private:
  VectorNorm norm_;
  InducedOptions opts_;
  std::vector<Eigen::MatrixXcd> raw_;  // raw_[b](k, a): transform of bump * pi_{ab}
  Eigen::VectorXd xi2_;
};

/// Throws Error{unsupported} on SU2 models.
double induced_sobolev(const Representation& rep, const Eigen::VectorXcd& v, double s,
                       const InducedOptions& opts = {});

/// Negative-order norms through the dual representation
/// pi'(g) = pi(g^{-1})^T on E' with the dual norm p'.  In coordinates
/// mu = conj(lambda) its generators are -D_j^*.
///
///   dual_norm(lambda) = p'_k(lambda)    (Sobolev norm of the dual representation)
///   operator()(v)     = p_{-k}(v) = sup_{p'_k(lambda) <= 1} |lambda(v)|
///
/// Hermitian norms use T_k = sum B^* S^{-1} B over the dual operators B, so
/// that p_{-k}(v)^2 = v^* T_k^{-1} v.  l1/linf norms are supported for k = 0.
class DualSobolev {
 public:
  static DualSobolev standard(const Representation& rep, int k);
  /// Dual of the Laplace norm of even order k.
  static DualSobolev laplace(const Representation& rep, int k, double R);

  double dual_norm(const Eigen::VectorXcd& lambda) const;
  double operator()(const Eigen::VectorXcd& v) const;
  const Eigen::MatrixXcd& gram() const noexcept { return T_; }
  double condition() const noexcept { return condition_; }
  /// condition > 1e12.
  bool ill_conditioned() const noexcept { return condition_ > 1e12; }

 private:
  DualSobolev() = default;
  static DualSobolev from_operators(const Representation& rep, const std::vector<Eigen::MatrixXcd>& ops);

  VectorNorm norm_;
  bool trivial_ = false;  // k = 0 with a non-Hermitian norm
  Eigen::MatrixXcd T_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
  double condition_ = 1.0;
};

/// Generators -D_j^* of the dual representation in conjugate coordinates.
std::vector<Eigen::MatrixXcd> dual_generators(const Representation& rep);

double negative_sobolev(const Representation& rep, const Eigen::VectorXcd& v, int k);

/// p_j for any integer j: standard for j >= 0, negative for j < 0.
double integer_sobolev(const Representation& rep, const Eigen::VectorXcd& v, int j);

/// Evaluates one norm family with its diagnostics (CLI `norms`).
NormReport evaluate_norm(const Representation& rep, const Eigen::VectorXcd& v, NormFamily family, double order,
                         double R = 1.0, const InducedOptions& opts = {});

}  // namespace sobrep
