#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "sobrep/lie_algebra.hpp"

namespace sobrep {

using Complex = std::complex<double>;

/// PBW monomial X_1^{m_1} ... X_n^{m_n} (basis order is the input order).
struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(int dim) : exponents(static_cast<std::size_t>(dim), 0) {}
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}

  static Monomial generator(int dim, int j) {
    Monomial m(dim);
    m.exponents[static_cast<std::size_t>(j)] = 1;
    return m;
  }

  int dim() const noexcept { return static_cast<int>(exponents.size()); }
  int degree() const noexcept {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  bool operator==(const Monomial&) const = default;
};

/// Graded-lexicographic order: total degree first, then exponents
/// lexicographically.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exponents < b.exponents;
  }
};

/// All monomials of total degree <= k in `dim` variables, graded-lex order.
std::vector<Monomial> monomials_up_to(int dim, int k);

/// Element of U(g) in PBW canonical form: a finite map monomial -> complex
/// coefficient with no zero coefficients stored.
class EnvelopingElement {
 public:
  using Terms = std::map<Monomial, Complex, GradedLex>;

  explicit EnvelopingElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  static EnvelopingElement identity(const AlgebraPtr& algebra, Complex scale = 1.0);
  static EnvelopingElement generator(const AlgebraPtr& algebra, int j);
  static EnvelopingElement from_monomial(const AlgebraPtr& algebra, const Monomial& m,
                                         Complex coeff = 1.0);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const;
  Complex coefficient(const Monomial& m) const;

  /// Adds coeff * m.  The monomial must already be in PBW order (it always
  /// is: a Monomial is an exponent vector).
  void add_term(const Monomial& m, Complex coeff);

  EnvelopingElement& operator+=(const EnvelopingElement& other);
  EnvelopingElement& operator-=(const EnvelopingElement& other);
  EnvelopingElement& operator*=(Complex s);

  /// Human readable form, highest degree first, e.g. "1.0*[2,0,0] - 1.0*[0,0,1]".
  std::string to_string() const;

 private:
  void check_same_algebra(const EnvelopingElement& other) const;

  AlgebraPtr algebra_;
  Terms terms_;
};

EnvelopingElement operator+(EnvelopingElement a, const EnvelopingElement& b);
EnvelopingElement operator-(EnvelopingElement a, const EnvelopingElement& b);
EnvelopingElement operator*(EnvelopingElement a, Complex s);
EnvelopingElement operator*(Complex s, EnvelopingElement a);

/// PBW canonical form of u*v, rewriting X_j X_i = X_i X_j + [X_j, X_i] until
/// all monomials are ordered.  Throws Error{algebra_mismatch}.
EnvelopingElement normal_order_product(const EnvelopingElement& u, const EnvelopingElement& v);
EnvelopingElement operator*(const EnvelopingElement& u, const EnvelopingElement& v);

/// Normal-orders an arbitrary word X_{w_0} X_{w_1} ... (indices may be in any
/// order).
EnvelopingElement normal_order_word(const AlgebraPtr& algebra, const std::vector<int>& word,
                                    Complex coeff = 1.0);

EnvelopingElement power(const EnvelopingElement& u, int m);

/// (R^2 + Delta)^m.
EnvelopingElement resolvent_element(const AlgebraPtr& algebra, double R, int m);

}  // namespace sobrep
