#include "treedet/ring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "treedet/error.hpp"

namespace treedet {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_divisible: return "NotDivisible";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::zero_base: return "ZeroBase";
    case Errc::parse_error: return "ParseError";
    case Errc::not_a_tree: return "NotATree";
    case Errc::bad_vertex_label: return "BadVertexLabel";
    case Errc::not_a_leaf: return "NotALeaf";
    case Errc::same_leaf: return "SameLeaf";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::disconnects_tree: return "DisconnectsTree";
    case Errc::shift_needs_two_vertices: return "ShiftNeedsAtLeastTwoVertices";
    case Errc::bad_size: return "BadSize";
    case Errc::internal_division_failure: return "InternalDivisionFailure";
    case Errc::hypothesis_violated: return "HypothesisViolated";
    case Errc::bad_config: return "BadConfig";
  }
  return "Unknown";
}

namespace {

std::int32_t get(const Monomial& m, Var v) noexcept {
  switch (v) {
    case Var::q: return m.q;
    case Var::t: return m.t;
    case Var::x: return m.x;
  }
  return 0;
}

// Bounding box of the exponents of a nonzero polynomial.
struct Box {
  std::int32_t q_lo, q_hi, t_lo, t_hi, x_lo, x_hi;
};

Box box_of(const std::vector<MultiPoly::Term>& terms) {
  Box b{std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::min(),
        std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::min(),
        std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::min()};
  for (const auto& [m, c] : terms) {
    b.q_lo = std::min(b.q_lo, m.q);
    b.q_hi = std::max(b.q_hi, m.q);
    b.t_lo = std::min(b.t_lo, m.t);
    b.t_hi = std::max(b.t_hi, m.t);
    b.x_lo = std::min(b.x_lo, m.x);
    b.x_hi = std::max(b.x_hi, m.x);
  }
  return b;
}

void sort_terms(std::vector<MultiPoly::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const MultiPoly::Term& a, const MultiPoly::Term& b) { return a.mono < b.mono; });
}

template <class Op>
std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a,
                                   const std::vector<MultiPoly::Term>& b, Op combine) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono < a[i].mono) {
      out.push_back({b[j].mono, combine(mpz_class(0), b[j].coeff)});
      ++j;
    } else {
      mpz_class c = combine(a[i].coeff, b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(long constant) {
  if (constant != 0) terms_.push_back({Monomial{}, mpz_class(constant)});
}

MultiPoly::MultiPoly(const mpz_class& constant) {
  if (constant != 0) terms_.push_back({Monomial{}, constant});
}

MultiPoly MultiPoly::monomial(Monomial m, const mpz_class& coeff) {
  MultiPoly p;
  if (coeff != 0) p.terms_.push_back({m, coeff});
  return p;
}

MultiPoly MultiPoly::var(Var v) {
  Monomial m;
  switch (v) {
    case Var::q: m.q = 1; break;
    case Var::t: m.t = 1; break;
    case Var::x: m.x = 1; break;
  }
  return monomial(m);
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  sort_terms(terms);
  MultiPoly p;
  for (auto& term : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == term.mono) {
      p.terms_.back().coeff += term.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (term.coeff != 0) {
      p.terms_.push_back(std::move(term));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Monomial{});
}

std::int32_t MultiPoly::degree(Var v) const noexcept {
  if (terms_.empty()) return 0;
  std::int32_t d = std::numeric_limits<std::int32_t>::min();
  for (const auto& term : terms_) d = std::max(d, get(term.mono, v));
  return d;
}

std::int32_t MultiPoly::min_degree(Var v) const noexcept {
  if (terms_.empty()) return 0;
  std::int32_t d = std::numeric_limits<std::int32_t>::max();
  for (const auto& term : terms_) d = std::min(d, get(term.mono, v));
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& term : r.terms_) term.coeff = -term.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x + y); });
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x - y); });
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ta = a.terms_;
  const auto& tb = b.terms_;
  if (ta.size() == 1 && ta[0].mono == Monomial{} && ta[0].coeff == 1) return b;
  if (tb.size() == 1 && tb[0].mono == Monomial{} && tb[0].coeff == 1) return a;

  const Box ba = box_of(ta);
  const Box bb = box_of(tb);
  const std::int64_t nq = std::int64_t{ba.q_hi} + bb.q_hi - ba.q_lo - bb.q_lo + 1;
  const std::int64_t nt = std::int64_t{ba.t_hi} + bb.t_hi - ba.t_lo - bb.t_lo + 1;
  const std::int64_t nx = std::int64_t{ba.x_hi} + bb.x_hi - ba.x_lo - bb.x_lo + 1;
  const std::int64_t cells = nq * nt * nx;
  const std::int64_t products = static_cast<std::int64_t>(ta.size()) * static_cast<std::int64_t>(tb.size());

  std::vector<MultiPoly::Term> out;
  if (cells <= 4 * products + 256) {
    // Dense accumulation over the exponent box of the product.
    const std::int32_t q0 = ba.q_lo + bb.q_lo;
    const std::int32_t t0 = ba.t_lo + bb.t_lo;
    const std::int32_t x0 = ba.x_lo + bb.x_lo;
    std::vector<mpz_class> acc(static_cast<std::size_t>(cells));
    auto index = [&](const Monomial& m) {
      return (static_cast<std::int64_t>(m.t - t0) * nx + (m.x - x0)) * nq + (m.q - q0);
    };
    for (const auto& [ma, ca] : ta) {
      for (const auto& [mb, cb] : tb) {
        mpz_addmul(acc[static_cast<std::size_t>(index(ma * mb))].get_mpz_t(), ca.get_mpz_t(),
                   cb.get_mpz_t());
      }
    }
    for (std::int64_t idx = 0; idx < cells; ++idx) {
      auto& c = acc[static_cast<std::size_t>(idx)];
      if (c == 0) continue;
      const auto q = static_cast<std::int32_t>(idx % nq) + q0;
      const auto rest = idx / nq;
      const auto x = static_cast<std::int32_t>(rest % nx) + x0;
      const auto t = static_cast<std::int32_t>(rest / nx) + t0;
      out.push_back({Monomial{q, t, x}, std::move(c)});
    }
    sort_terms(out);
    MultiPoly r;
    r.terms_ = std::move(out);
    return r;
  }

  out.reserve(static_cast<std::size_t>(products));
  for (const auto& [ma, ca] : ta)
    for (const auto& [mb, cb] : tb) out.push_back({ma * mb, ca * cb});
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly MultiPoly::shifted_q(std::int32_t k) const {
  MultiPoly r = *this;
  for (auto& term : r.terms_) term.mono.q += k;
  return r;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

void append_factor(std::string& s, char name, std::int32_t e) {
  if (e == 0) return;
  if (!s.empty()) s += '*';
  s += name;
  if (e != 1) s += '^' + std::to_string(e);
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    if (it == terms_.rbegin()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    std::string factors;
    append_factor(factors, 'q', m.q);
    append_factor(factors, 't', m.t);
    append_factor(factors, 'x', m.x);
    const mpz_class mag = abs(c);
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + '*' + factors;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
  }

  MultiPoly parse() {
    if (src_.empty()) fail("empty input");
    std::vector<MultiPoly::Term> terms;
    bool first = true;
    while (pos_ < src_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto term = parse_term();
      if (sign < 0) term.coeff = -term.coeff;
      terms.push_back(std::move(term));
    }
    return MultiPoly::from_terms(std::move(terms));
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse_error, msg + " at offset " + std::to_string(pos_) + " in \"" + src_ + "\"");
  }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d += src_[pos_++];
    if (d.empty()) fail("expected digits");
    return d;
  }

  MultiPoly::Term parse_term() {
    MultiPoly::Term term{Monomial{}, 1};
    for (;;) {
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        term.coeff *= mpz_class(digits());
      } else if (ch == 'q' || ch == 't' || ch == 'x') {
        ++pos_;
        long e = 1;
        if (peek() == '^') {
          ++pos_;
          bool neg = false;
          if (peek() == '-') {
            neg = true;
            ++pos_;
          }
          const auto d = digits();
          if (d.size() > 9) fail("exponent too large");
          e = std::stol(d) * (neg ? -1 : 1);
        }
        if (ch != 'q' && e < 0) fail("negative exponent on t or x");
        auto& slot = ch == 'q' ? term.mono.q : ch == 't' ? term.mono.t : term.mono.x;
        slot += static_cast<std::int32_t>(e);
      } else {
        fail(ch == '\0' ? "unexpected end of input" : std::string("unexpected '") + ch + "'");
      }
      if (peek() != '*') break;
      ++pos_;
    }
    return term;
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Named constructors and algebra

MultiPoly q_power(std::int64_t m) {
  return MultiPoly::monomial(Monomial{static_cast<std::int32_t>(m), 0, 0});
}

MultiPoly q_analogue(std::int64_t m) {
  std::vector<MultiPoly::Term> terms;
  if (m > 0) {
    for (std::int64_t k = 0; k < m; ++k) terms.push_back({Monomial{static_cast<std::int32_t>(k), 0, 0}, 1});
  } else {
    for (std::int64_t k = m; k < 0; ++k) terms.push_back({Monomial{static_cast<std::int32_t>(k), 0, 0}, -1});
  }
  return MultiPoly::from_terms(std::move(terms));
}

MultiPoly pow(const MultiPoly& base, unsigned k) {
  MultiPoly result(1);
  MultiPoly b = base;
  while (k != 0) {
    if (k & 1U) result *= b;
    k >>= 1U;
    if (k != 0) b *= b;
  }
  return result;
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw Error(Errc::division_by_zero, "exact_div by the zero polynomial");
  if (a.is_zero()) return {};

  // Strip the lowest power of q from both operands; q is prime and coprime to
  // the stripped divisor, so Laurent divisibility reduces to polynomial
  // divisibility in Z[q, t, x].
  const std::int32_t qa = a.min_degree(Var::q);
  const std::int32_t qb = b.min_degree(Var::q);
  const MultiPoly an = a.shifted_q(-qa);
  const MultiPoly bn = b.shifted_q(-qb);

  const auto& bt = bn.terms();
  if (bt.size() == 1 && bt[0].mono == Monomial{} && bt[0].coeff == 1) return a.shifted_q(-qb);

  const Box box_a = box_of(an.terms());
  const Box box_b = box_of(bt);
  // Degrees add in an integral domain, which bounds the quotient.
  const std::int32_t dq = box_a.q_hi - box_b.q_hi;
  const std::int32_t dt = box_a.t_hi - box_b.t_hi;
  const std::int32_t dx = box_a.x_hi - box_b.x_hi;
  auto not_divisible = [&] {
    return Error(Errc::not_divisible, "(" + a.to_string() + ") / (" + b.to_string() + ")");
  };
  if (dq < 0 || dt < 0 || dx < 0) throw not_divisible();

  const std::int64_t nq = box_a.q_hi + 1;
  const std::int64_t nx = box_a.x_hi + 1;
  const std::int64_t nt = box_a.t_hi + 1;
  const std::int64_t cells = nq * nx * nt;
  // Dense remainder indexed lexicographically by (t, x, q); scanning indices
  // downward visits leading terms in lex order.
  auto index = [&](std::int32_t q, std::int32_t t, std::int32_t x) {
    return static_cast<std::size_t>((static_cast<std::int64_t>(t) * nx + x) * nq + q);
  };
  std::vector<mpz_class> rem(static_cast<std::size_t>(cells));
  for (const auto& [m, c] : an.terms()) rem[index(m.q, m.t, m.x)] = c;

  const auto lead = *std::max_element(bt.begin(), bt.end(), [](const auto& l, const auto& r) {
    return std::tie(l.mono.t, l.mono.x, l.mono.q) < std::tie(r.mono.t, r.mono.x, r.mono.q);
  });

  std::vector<MultiPoly::Term> quotient;
  mpz_class c;
  for (std::int64_t idx = cells - 1; idx >= 0; --idx) {
    auto& r = rem[static_cast<std::size_t>(idx)];
    if (r == 0) continue;
    const auto q = static_cast<std::int32_t>(idx % nq);
    const auto rest = idx / nq;
    const auto x = static_cast<std::int32_t>(rest % nx);
    const auto t = static_cast<std::int32_t>(rest / nx);
    const Monomial m{q - lead.mono.q, t - lead.mono.t, x - lead.mono.x};
    if (m.q < 0 || m.t < 0 || m.x < 0 || m.q > dq || m.t > dt || m.x > dx) throw not_divisible();
    if (!mpz_divisible_p(r.get_mpz_t(), lead.coeff.get_mpz_t())) throw not_divisible();
    mpz_divexact(c.get_mpz_t(), r.get_mpz_t(), lead.coeff.get_mpz_t());
    for (const auto& [mb, cb] : bt) {
      mpz_submul(rem[index(mb.q + m.q, mb.t + m.t, mb.x + m.x)].get_mpz_t(), c.get_mpz_t(),
                 cb.get_mpz_t());
    }
    quotient.push_back({Monomial{m.q + qa - qb, m.t, m.x}, c});
  }
  return MultiPoly::from_terms(std::move(quotient));
}

namespace {

mpq_class rational_pow(const mpq_class& base, std::int64_t e) {
  mpq_class r;
  const auto k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

}  // namespace

mpq_class eval(const MultiPoly& p, const mpq_class& q, const mpq_class& t, const mpq_class& x) {
  if (q == 0 && p.min_degree(Var::q) < 0) {
    throw Error(Errc::zero_base, "q = 0 with negative q exponent in " + p.to_string());
  }
  std::map<std::int32_t, mpq_class> q_pows, t_pows, x_pows;
  auto cached = [](std::map<std::int32_t, mpq_class>& cache, const mpq_class& base, std::int32_t e) -> const mpq_class& {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, rational_pow(base, e)).first;
    return it->second;
  };
  mpq_class sum = 0;
  for (const auto& [m, c] : p.terms()) {
    sum += mpq_class(c) * cached(q_pows, q, m.q) * cached(t_pows, t, m.t) * cached(x_pows, x, m.x);
  }
  return sum;
}

MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& value) {
  if (v == Var::q && p.min_degree(Var::q) < 0 && value.size() != 1) {
    throw Error(Errc::bad_config, "substituting a non-monomial for q in a Laurent polynomial");
  }
  std::map<std::int32_t, MultiPoly> powers;
  auto power = [&](std::int32_t e) -> const MultiPoly& {
    auto it = powers.find(e);
    if (it != powers.end()) return it->second;
    MultiPoly r;
    if (e >= 0) {
      r = pow(value, static_cast<unsigned>(e));
    } else {
      const auto& [m, c] = value.terms()[0];
      if ((c != 1 && c != -1) || m.t != 0 || m.x != 0) throw Error(Errc::not_divisible, "inverse of " + value.to_string());
      r = pow(MultiPoly::monomial(Monomial{-m.q, -m.t, -m.x}, c), static_cast<unsigned>(-e));
    }
    return powers.emplace(e, std::move(r)).first->second;
  };
  MultiPoly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    std::int32_t e = 0;
    switch (v) {
      case Var::q: e = rest.q; rest.q = 0; break;
      case Var::t: e = rest.t; rest.t = 0; break;
      case Var::x: e = rest.x; rest.x = 0; break;
    }
    out += MultiPoly::monomial(rest, c) * power(e);
  }
  return out;
}

bool addition_law_check(std::int64_t m1, std::int64_t m2) {
  return q_analogue(m1 + m2) == q_power(m1) * q_analogue(m2) + q_analogue(m1);
}

}  // namespace treedet
