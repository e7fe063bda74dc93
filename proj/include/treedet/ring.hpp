#pragma once

// Exact arithmetic in Z[q, q^-1, t, x].
//
// MultiPoly is the scalar type of every matrix in this project. q may carry
// negative exponents (weights are arbitrary integers), t and x may not.
// Coefficients are GMP integers; Bareiss intermediates overflow 64 bits
// quickly.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace treedet {

enum class Var { q, t, x };

struct Monomial {
  std::int32_t q = 0;
  std::int32_t t = 0;  // >= 0
  std::int32_t x = 0;  // >= 0

  std::int64_t total_degree() const noexcept {
    return std::int64_t{q} + t + x;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  // Graded lexicographic on (q, t, x). This is the storage order of
  // MultiPoly terms.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    if (auto c = a.q <=> b.q; c != 0) return c;
    if (auto c = a.t <=> b.t; c != 0) return c;
    return a.x <=> b.x;
  }

  Monomial operator*(const Monomial& o) const noexcept {
    return {q + o.q, t + o.t, x + o.x};
  }
};

class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    mpz_class coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  MultiPoly() = default;
  MultiPoly(long constant);  // NOLINT(google-explicit-constructor): integers embed in the ring
  explicit MultiPoly(const mpz_class& constant);

  static MultiPoly monomial(Monomial m, const mpz_class& coeff = 1);
  static MultiPoly var(Var v);
  // Sorts, merges equal monomials and drops zero coefficients.
  static MultiPoly from_terms(std::vector<Term> terms);

  // Inverse of to_string(). Accepts e.g. "q^-2 + 3*q*t - x"; whitespace is
  // ignored. Throws Error{parse_error}.
  static MultiPoly parse(std::string_view text);

  // Terms in ascending graded-lex order, no zero coefficients.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;

  // Largest / smallest exponent of v over all terms. Zero for the zero polynomial.
  std::int32_t degree(Var v) const noexcept;
  std::int32_t min_degree(Var v) const noexcept;

  // Highest-first, e.g. "q^2 + 2*q + 1".
  std::string to_string() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  // Multiplies by q^k. Exact in the Laurent ring.
  MultiPoly shifted_q(std::int32_t k) const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

// [m]_q = (q^m - 1)/(q - 1), expanded. Negative m gives a Laurent polynomial.
MultiPoly q_analogue(std::int64_t m);

// The monomial q^m.
MultiPoly q_power(std::int64_t m);

MultiPoly pow(const MultiPoly& base, unsigned k);

// c with b*c == a. Throws Error{division_by_zero} for b == 0 and
// Error{not_divisible} when no such c exists in the ring.
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b);

// Value at a rational point. The expanded form is evaluated, so q = 1 is
// fine. Throws Error{zero_base} for q = 0 when a negative q exponent occurs.
mpq_class eval(const MultiPoly& p, const mpq_class& q, const mpq_class& t, const mpq_class& x);

// Replaces every occurrence of v by value. Substituting for q requires a
// monomial value whenever p has negative q exponents.
MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& value);

// [m1 + m2]_q == q^m1 [m2]_q + [m1]_q, checked symbolically.
bool addition_law_check(std::int64_t m1, std::int64_t m2);

}  // namespace treedet
