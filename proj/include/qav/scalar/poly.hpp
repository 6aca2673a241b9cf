#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qav/error.hpp"
#include "qav/number.hpp"
#include "qav/scalar/sturm.hpp"

namespace qav {

/// Maximum number of transcendental symbols a table may declare.
inline constexpr std::size_t kMaxSymbols = 8;

/// Exponent vector, one entry per symbol of the table.
struct Monomial {
  std::array<std::uint16_t, kMaxSymbols> exp{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const {
    for (std::size_t k = 0; k < kMaxSymbols; ++k)
      if (exp[k] > other.exp[k]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t k = 0; k < kMaxSymbols; ++k) m.exp[k] = a.exp[k] + b.exp[k];
    return m;
  }
  /// Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t k = 0; k < kMaxSymbols; ++k) m.exp[k] = a.exp[k] - b.exp[k];
    return m;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial variable(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.exp[index] = static_cast<std::uint16_t>(power);
    return m;
  }
};

/// Graded lexicographic order, symbol 0 most significant.
/// Returns true when a is strictly greater than b.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t k = 0; k < kMaxSymbols; ++k)
    if (a.exp[k] != b.exp[k]) return a.exp[k] > b.exp[k];
  return false;
}

inline int grlex_compare(const Monomial& a, const Monomial& b) {
  if (grlex_greater(a, b)) return 1;
  if (grlex_greater(b, a)) return -1;
  return 0;
}

/// Polynomial in Q[r_1..r_s]. Terms are kept sorted by decreasing grlex
/// order with no zero coefficients; the zero polynomial has no terms.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c) {           // NOLINT(google-explicit-constructor)
    if (!qav::is_zero(c)) terms_.emplace_back(Monomial{}, c);
  }
  Poly(const Monomial& m, const Rational& c) {
    if (!qav::is_zero(c)) terms_.emplace_back(m, c);
  }

  static Poly variable(std::size_t index, unsigned power = 1) {
    return Poly(Monomial::variable(index, power), Rational(1));
  }

  /// Builds from unsorted terms, combining duplicates.
  static Poly from_terms(std::vector<Term> terms) {
    Poly p;
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.first, b.first); });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (qav::is_zero(p.terms_.back().second)) p.terms_.pop_back();
      } else if (!qav::is_zero(t.second)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Constant coefficient value; only meaningful when is_constant().
  Rational constant_value() const { return terms_.empty() ? Rational(0) : terms_[0].second; }

  const Monomial& leading_monomial() const { return terms_.front().first; }
  const Rational& leading_coefficient() const { return terms_.front().second; }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.exp[var]);
    return d;
  }
  bool involves(std::size_t var) const {
    for (const auto& [m, c] : terms_)
      if (m.exp[var] != 0) return true;
    return false;
  }
  /// Highest variable index occurring, or -1 for constants.
  int max_variable() const {
    int v = -1;
    for (const auto& [m, c] : terms_)
      for (std::size_t k = 0; k < kMaxSymbols; ++k)
        if (m.exp[k] != 0) v = std::max(v, static_cast<int>(k));
    return v;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.terms_[0].second);
    if (b.is_constant()) return a.scaled(b.terms_[0].second);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
    return from_terms(std::move(out));
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rational& c) const {
    if (qav::is_zero(c)) return {};
    Poly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  Poly times_monomial(const Monomial& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.first = t.first * m;
    return r;
  }

  /// Scales so that the leading coefficient is 1 (zero stays zero).
  Poly monic() const {
    if (is_zero() || leading_coefficient() == 1) return *this;
    return scaled(1 / leading_coefficient());
  }

  Poly pow(unsigned e) const {
    Poly result(1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Exact quotient; throws NotDivisible when b does not divide *this.
  /// Quotient when b divides this exactly, otherwise nullopt.
  std::optional<Poly> try_div(const Poly& b) const {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (b.is_constant()) return scaled(1 / b.constant_value());
    for (std::size_t k = 0; k < kMaxSymbols; ++k)
      if (b.degree_in(k) > degree_in(k)) return is_zero() ? std::optional<Poly>(Poly()) : std::nullopt;
    std::vector<Term> quotient;
    Poly rem = *this;
    const Monomial& lb = b.leading_monomial();
    const Rational& cb = b.leading_coefficient();
    while (!rem.is_zero()) {
      const Monomial& lr = rem.leading_monomial();
      if (!lb.divides(lr)) return std::nullopt;
      Term t{lr / lb, rem.leading_coefficient() / cb};
      rem -= b.times_monomial(t.first).scaled(t.second);
      quotient.push_back(std::move(t));
    }
    return from_terms(std::move(quotient));
  }
  Poly exact_div(const Poly& b) const {
    auto q = try_div(b);
    if (!q) fail(ErrorKind::NotDivisible, "polynomial is not divisible");
    return std::move(*q);
  }


  /// Coefficients with respect to `var`, indexed by power; each is var-free.
  std::vector<Poly> coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      rest.exp[var] = 0;
      buckets[m.exp[var]].emplace_back(rest, c);
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
  }

  /// Substitutes rational values for every variable.
  Rational evaluate(const std::array<Rational, kMaxSymbols>& point) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (std::size_t k = 0; k < kMaxSymbols; ++k)
        for (unsigned e = 0; e < m.exp[k]; ++e) v *= point[k];
      sum += v;
    }
    return sum;
  }

  /// Univariate coefficient list (index = power) when only `var` occurs.
  std::vector<Rational> univariate_coefficients(std::size_t var) const {
    std::vector<Rational> out(degree_in(var) + 1, Rational(0));
    for (const auto& [m, c] : terms_) out[m.exp[var]] += c;
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (!(a.terms_[k].first == b.terms_[k].first) || a.terms_[k].second != b.terms_[k].second) return false;
    return true;
  }

  /// Total order used for canonical sorting (not a ring order).
  friend int compare(const Poly& a, const Poly& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (int c = grlex_compare(a.terms_[k].first, b.terms_[k].first)) return c;
      if (int c = cmp(a.terms_[k].second, b.terms_[k].second)) return c < 0 ? -1 : 1;
    }
    if (a.terms_.size() == b.terms_.size()) return 0;
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  }

 private:
  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    Poly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].first, a.terms_[i].first)) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? Rational(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].second - b.terms_[j].second)
                              : Rational(a.terms_[i].second + b.terms_[j].second);
        if (!qav::is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

namespace detail {

inline Poly leading_coeff_in(const Poly& p, std::size_t var) { return p.coefficients_in(var).back(); }

/// Sparse pseudo-remainder of a by b with respect to `var`.
inline Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Poly lb = leading_coeff_in(b, var);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const unsigned da = a.degree_in(var);
    const Poly la = leading_coeff_in(a, var);
    a = lb * a - (la * b).times_monomial(Monomial::variable(var, da - db));
  }
  return a;
}

/// Scales p so its coefficients are coprime integers with a positive
/// leading coefficient.
inline Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Integer den = 1, num = 0;
  for (const auto& [m, c] : p.terms()) {
    den = lcm(den, c.get_den());
    num = gcd(num, c.get_num());
  }
  Rational f = make_rational(den, num);
  if (sgn(p.leading_coefficient()) < 0) f = -f;
  return f == 1 ? p : p.scaled(f);
}

inline Poly monomial_gcd(const Monomial& m, const Poly& p) {
  Monomial g = m;
  for (const auto& [t, c] : p.terms())
    for (std::size_t k = 0; k < kMaxSymbols; ++k) g.exp[k] = std::min(g.exp[k], t.exp[k]);
  return Poly(g, Rational(1));
}

inline Poly univariate_gcd(Poly a, Poly b, std::size_t var) {
  // Euclid over Q[var] with monic normalization.
  while (!b.is_zero()) {
    Poly r = a;
    const unsigned db = b.degree_in(var);
    const Poly bm = b.monic();
    while (!r.is_zero() && r.degree_in(var) >= db) {
      r -= bm.times_monomial(Monomial::variable(var, r.degree_in(var) - db)).scaled(r.leading_coefficient());
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace detail

Poly gcd(const Poly& a, const Poly& b);

/// Monic gcd of all coefficients of p with respect to var.
inline Poly content_in(const Poly& p, std::size_t var) {
  Poly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

namespace detail {

/// Image of p in Q[var] after substituting vals[k] for every other k.
inline sturm::UPoly specialize_except(const Poly& p, std::size_t var, const std::array<Rational, kMaxSymbols>& vals) {
  sturm::UPoly out(p.degree_in(var) + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (std::size_t k = 0; k < kMaxSymbols; ++k)
      if (k != var)
        for (unsigned e = 0; e < m.exp[k]; ++e) v *= vals[k];
    out[m.exp[var]] += v;
  }
  return out;
}

/// True when deg_var gcd(a, b) = 0 is certified by a specialisation
/// that preserves both degrees in var and has coprime images.
inline bool coprime_in(const Poly& a, const Poly& b, std::size_t var) {
  static constexpr int kOffsets[] = {0, 7, 19};
  for (int off : kOffsets) {
    std::array<Rational, kMaxSymbols> vals;
    for (std::size_t k = 0; k < kMaxSymbols; ++k) vals[k] = Rational(static_cast<long>(2 + 3 * k + off));
    sturm::UPoly x = specialize_except(a, var, vals), y = specialize_except(b, var, vals);
    if (is_zero(x.back()) || is_zero(y.back())) continue;
    while (!y.empty()) {
      sturm::UPoly r = sturm::remainder(x, y);
      x = std::move(y);
      y = std::move(r);
    }
    return x.size() == 1;
  }
  return false;
}

}  // namespace detail

namespace detail {

/// p with `var` replaced by the integer x.
inline Poly substitute(const Poly& p, std::size_t var, const Integer& x) {
  std::vector<Poly::Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), x.get_mpz_t(), m.exp[var]);
    r.exp[var] = 0;
    terms.emplace_back(r, c * f);
  }
  return Poly::from_terms(std::move(terms));
}

inline Integer max_norm(const Poly& p) {
  Integer b = 0;
  for (const auto& [m, c] : p.terms()) b = std::max<Integer>(b, abs(c.get_num()));
  return b;
}

/// Inverse of substitute for integer-coefficient polynomials: symmetric
/// x-adic expansion of every coefficient.
inline Poly interpolate(const Poly& h, std::size_t var, const Integer& x) {
  std::vector<Poly::Term> terms;
  const Integer half = x / 2;
  for (const auto& [m, c] : h.terms()) {
    Integer v = c.get_num();
    unsigned k = 0;
    while (v != 0) {
      Integer d;
      mpz_fdiv_r(d.get_mpz_t(), v.get_mpz_t(), x.get_mpz_t());
      if (d > half) d -= x;
      Monomial r = m;
      r.exp[var] = static_cast<std::uint16_t>(k);
      if (d != 0) terms.emplace_back(r, Rational(d));
      v = (v - d) / x;
      ++k;
    }
  }
  return Poly::from_terms(std::move(terms));
}

/// Positive gcd of the integer coefficients.
inline Integer integer_content(const Poly& p) {
  Integer g = 0;
  for (const auto& [m, c] : p.terms()) g = gcd(g, c.get_num());
  return g;
}

/// Heuristic gcd in Z[x] (evaluation at a large integer, recursive gcd of
/// the images, symmetric x-adic reconstruction), certified by exact
/// division. Inputs have integer coefficients; the result includes the
/// integer content. Returns nullopt when the heuristic does not succeed.
inline std::optional<Poly> heuristic_gcd(const Poly& f0, const Poly& g0, int depth = 0) {
  if (f0.is_zero() || g0.is_zero()) return std::nullopt;
  const Integer cf = integer_content(f0), cg = integer_content(g0), c = gcd(cf, cg);
  const int var = std::max(f0.max_variable(), g0.max_variable());
  if (var < 0) return Poly(Rational(c));
  if (depth > static_cast<int>(kMaxSymbols)) return std::nullopt;
  const Poly f = f0.scaled(Rational(1) / cf), g = g0.scaled(Rational(1) / cg);
  const auto v = static_cast<std::size_t>(var);
  Integer x = 2 * std::min(max_norm(f), max_norm(g)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Poly ff = substitute(f, v, x), gg = substitute(g, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto h = heuristic_gcd(ff, gg, depth + 1)) {
        Poly cand = interpolate(*h, v, x);
        if (!cand.is_zero()) {
          cand = integer_primitive(cand);
          if (f.try_div(cand) && g.try_div(cand)) return cand.scaled(Rational(c));
        }
      }
    }
    x = x * 73794 / 27011 + 1;
  }
  return std::nullopt;
}

}  // namespace detail

/// Monic greatest common divisor over Q: variables occurring in only one
/// argument, or certified coprime by specialisation, are eliminated
/// through contents; the rest is a primitive PRS in the variable of
/// least degree. gcd(0, 0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.is_monomial()) return detail::monomial_gcd(a.leading_monomial(), b);
  if (b.is_monomial()) return detail::monomial_gcd(b.leading_monomial(), a);
  if (a == b) return a.monic();
  std::vector<std::size_t> shared;
  for (std::size_t v = 0; v < kMaxSymbols; ++v) {
    const bool in_a = a.involves(v), in_b = b.involves(v);
    if (in_a && !in_b) return gcd(content_in(a, v), b);
    if (in_b && !in_a) return gcd(a, content_in(b, v));
    if (in_a) shared.push_back(v);
  }
  if (shared.size() == 1) {
    if (auto h = detail::heuristic_gcd(detail::integer_primitive(a), detail::integer_primitive(b))) return h->monic();
    return detail::univariate_gcd(a, b, shared[0]);
  }
  std::sort(shared.begin(), shared.end(), [&](std::size_t x, std::size_t y) {
    const unsigned dx = std::max(a.degree_in(x), b.degree_in(x)), dy = std::max(a.degree_in(y), b.degree_in(y));
    return dx != dy ? dx < dy : x < y;
  });
  for (std::size_t v : shared)
    if (detail::coprime_in(a, b, v)) return gcd(content_in(a, v), content_in(b, v));
  if (auto h = detail::heuristic_gcd(detail::integer_primitive(a), detail::integer_primitive(b))) return h->monic();
  const std::size_t v = shared[0];
  const Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = detail::integer_primitive(a.exact_div(ca)), pb = detail::integer_primitive(b.exact_div(cb));
  const Poly c = gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Poly r = detail::pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = Poly();
      break;
    }
    if (!r.involves(v)) {
      pa = Poly(1);
      break;
    }
    pb = detail::integer_primitive(r.exact_div(content_in(r, v)));
  }
  return (c * pa.exact_div(content_in(pa, v))).monic();
}

}  // namespace qav
