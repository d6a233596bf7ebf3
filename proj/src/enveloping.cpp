#include "sobrep/enveloping.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace sobrep {

namespace {

using Terms = EnvelopingElement::Terms;

void accumulate(Terms& into, const Monomial& m, Complex c) {
  if (c == Complex(0.0)) return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) into.erase(it);
  }
}

/// Memoized right multiplication of ordered monomials by generators.
class Rewriter {
 public:
  explicit Rewriter(const LieAlgebra& algebra) : g_(algebra) {}

  // m * X_j in PBW form.
  const Terms& times_generator(const Monomial& m, int j) {
    auto key = std::make_pair(m, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Terms out;
    int last = -1;
    for (int i = m.dim() - 1; i >= 0; --i)
      if (m.exponents[i] > 0) {
        last = i;
        break;
      }
    if (last <= j) {
      Monomial r = m;
      ++r.exponents[j];
      out.emplace(std::move(r), 1.0);
    } else {
      // m = m' X_last with last > j:  m' X_last X_j = (m' X_j) X_last + m' [X_last, X_j]
      Monomial prefix = m;
      --prefix.exponents[last];
      const Terms head = times_generator(prefix, j);
      for (const auto& [mono, c] : head) {
        for (const auto& [mono2, c2] : times_generator(mono, last)) accumulate(out, mono2, c * c2);
      }
      for (int k = 0; k < g_.dim(); ++k) {
        const double ck = g_.c(last, j, k);
        if (ck == 0.0) continue;
        const Terms tail = times_generator(prefix, k);
        for (const auto& [mono, c] : tail) accumulate(out, mono, ck * c);
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  Terms times_word(const Terms& left, const std::vector<int>& word) {
    Terms cur = left;
    for (int j : word) {
      Terms next;
      for (const auto& [mono, c] : cur)
        for (const auto& [mono2, c2] : times_generator(mono, j)) accumulate(next, mono2, c * c2);
      cur = std::move(next);
    }
    return cur;
  }

 private:
  struct KeyLess {
    bool operator()(const std::pair<Monomial, int>& a, const std::pair<Monomial, int>& b) const {
      if (a.second != b.second) return a.second < b.second;
      return a.first.exponents < b.first.exponents;
    }
  };
  const LieAlgebra& g_;
  std::map<std::pair<Monomial, int>, Terms, KeyLess> memo_;
};

std::vector<int> word_of(const Monomial& m) {
  std::vector<int> w;
  for (int j = 0; j < m.dim(); ++j)
    for (int e = 0; e < m.exponents[j]; ++e) w.push_back(j);
  return w;
}

Terms product_terms(Rewriter& rw, const Terms& u, const Terms& v) {
  Terms out;
  for (const auto& [mv, cv] : v) {
    const auto word = word_of(mv);
    Terms scaled;
    for (const auto& [mu, cu] : u) accumulate(scaled, mu, cu * cv);
    for (const auto& [m, c] : rw.times_word(scaled, word)) accumulate(out, m, c);
  }
  return out;
}

std::string format_real(double x) {
  std::string s = fmt::format("{}", x);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

std::vector<Monomial> monomials_up_to(int dim, int k) {
  std::vector<Monomial> out;
  Monomial m(dim);
  // Enumerate exponent vectors with sum <= k by odometer.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == dim) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      m.exponents[pos] = e;
      rec(pos + 1, remaining - e);
    }
    m.exponents[pos] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

EnvelopingElement EnvelopingElement::identity(const AlgebraPtr& algebra, Complex scale) {
  EnvelopingElement e(algebra);
  e.add_term(Monomial(algebra->dim()), scale);
  return e;
}

EnvelopingElement EnvelopingElement::generator(const AlgebraPtr& algebra, int j) {
  if (j < 0 || j >= algebra->dim()) {
    throw Error(ErrorCode::index_out_of_range, fmt::format("generator index {} out of range", j));
  }
  return from_monomial(algebra, Monomial::generator(algebra->dim(), j));
}

EnvelopingElement EnvelopingElement::from_monomial(const AlgebraPtr& algebra, const Monomial& m,
                                                   Complex coeff) {
  EnvelopingElement e(algebra);
  e.add_term(m, coeff);
  return e;
}

int EnvelopingElement::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

Complex EnvelopingElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void EnvelopingElement::add_term(const Monomial& m, Complex coeff) {
  if (m.dim() != algebra_->dim()) {
    throw Error(ErrorCode::algebra_mismatch, "monomial dimension does not match algebra");
  }
  for (int e : m.exponents)
    if (e < 0) throw Error(ErrorCode::invalid_argument, "negative exponent in monomial");
  accumulate(terms_, m, coeff);
}

void EnvelopingElement::check_same_algebra(const EnvelopingElement& other) const {
  if (algebra_ != other.algebra_ && algebra_->distance_to(*other.algebra_) != 0.0) {
    throw Error(ErrorCode::algebra_mismatch, "enveloping elements belong to different algebras");
  }
}

EnvelopingElement& EnvelopingElement::operator+=(const EnvelopingElement& other) {
  check_same_algebra(other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  return *this;
}

EnvelopingElement& EnvelopingElement::operator-=(const EnvelopingElement& other) {
  check_same_algebra(other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  return *this;
}

EnvelopingElement& EnvelopingElement::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string EnvelopingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      coeff = format_real(std::abs(c.real()));
    } else {
      coeff = fmt::format("({}{}{}i)", format_real(c.real()), c.imag() < 0 ? "-" : "+",
                          format_real(std::abs(c.imag())));
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff;
    out += "*[";
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ",";
      out += std::to_string(m.exponents[j]);
    }
    out += "]";
    first = false;
  }
  return out;
}

EnvelopingElement operator+(EnvelopingElement a, const EnvelopingElement& b) { return a += b; }
EnvelopingElement operator-(EnvelopingElement a, const EnvelopingElement& b) { return a -= b; }
EnvelopingElement operator*(EnvelopingElement a, Complex s) { return a *= s; }
EnvelopingElement operator*(Complex s, EnvelopingElement a) { return a *= s; }

EnvelopingElement normal_order_product(const EnvelopingElement& u, const EnvelopingElement& v) {
  if (u.algebra() != v.algebra() && u.algebra()->distance_to(*v.algebra()) != 0.0) {
    throw Error(ErrorCode::algebra_mismatch, "cannot multiply elements of different algebras");
  }
  Rewriter rw(*u.algebra());
  EnvelopingElement out(u.algebra());
  for (const auto& [m, c] : product_terms(rw, u.terms(), v.terms())) out.add_term(m, c);
  return out;
}

EnvelopingElement operator*(const EnvelopingElement& u, const EnvelopingElement& v) {
  return normal_order_product(u, v);
}

EnvelopingElement normal_order_word(const AlgebraPtr& algebra, const std::vector<int>& word,
                                    Complex coeff) {
  for (int j : word)
    if (j < 0 || j >= algebra->dim()) {
      throw Error(ErrorCode::index_out_of_range, fmt::format("generator index {} out of range", j));
    }
  Rewriter rw(*algebra);
  Terms start;
  start.emplace(Monomial(algebra->dim()), coeff);
  EnvelopingElement out(algebra);
  for (const auto& [m, c] : rw.times_word(start, word)) out.add_term(m, c);
  return out;
}

EnvelopingElement power(const EnvelopingElement& u, int m) {
  if (m < 0) throw Error(ErrorCode::invalid_argument, "power exponent must be nonnegative");
  Rewriter rw(*u.algebra());
  Terms acc;
  acc.emplace(Monomial(u.algebra()->dim()), 1.0);
  for (int i = 0; i < m; ++i) acc = product_terms(rw, acc, u.terms());
  EnvelopingElement out(u.algebra());
  for (const auto& [mono, c] : acc) out.add_term(mono, c);
  return out;
}

EnvelopingElement resolvent_element(const AlgebraPtr& algebra, double R, int m) {
  if (!(R > 0.0)) throw Error(ErrorCode::invalid_argument, "R must be positive");
  return power(EnvelopingElement::identity(algebra, R * R) + laplace_element(algebra), m);
}

}  // namespace sobrep
