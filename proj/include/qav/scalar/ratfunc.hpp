#pragma once

#include <utility>

#include "qav/scalar/poly.hpp"

namespace qav {

/// Element of Q(r_1..r_s) in canonical form: gcd(num, den) = 1 and den
/// monic under grlex. Equal values have identical representations.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}                 // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}     // NOLINT(google-explicit-constructor)
  RatFunc(Poly p) : num_(std::move(p)), den_(1) {}     // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }

  RatFunc operator-() const { return from_canonical(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    if (b.is_polynomial()) return from_canonical(a.num_ + b.num_ * a.den_, a.den_);
    if (a.is_polynomial()) return from_canonical(a.num_ * b.den_ + b.num_, b.den_);
    const Poly g = gcd(a.den_, b.den_);
    const Poly ad = a.den_.exact_div(g), bd = b.den_.exact_div(g);
    return RatFunc(a.num_ * bd + b.num_ * ad, a.den_ * bd);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
    if (a.is_constant()) return from_canonical(b.num_.scaled(a.constant_value()), b.den_);
    if (b.is_constant()) return from_canonical(a.num_.scaled(b.constant_value()), a.den_);
    // Cross-cancel so the product is already reduced.
    const Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n = a.num_.exact_div(g1) * b.num_.exact_div(g2);
    Poly d = a.den_.exact_div(g2) * b.den_.exact_div(g1);
    const Rational lc = d.leading_coefficient();
    return from_canonical(n.scaled(1 / lc), d.scaled(1 / lc));
  }

  RatFunc inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero rational function");
    const Rational lc = num_.leading_coefficient();
    return from_canonical(den_.scaled(1 / lc), num_.scaled(1 / lc));
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    return a * b.inverse();
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  /// Exact evaluation; throws PoleAtWitness when the denominator vanishes.
  Rational evaluate(const std::array<Rational, kMaxSymbols>& point) const {
    const Rational d = den_.evaluate(point);
    if (qav::is_zero(d)) fail(ErrorKind::PoleAtWitness, "denominator vanishes at witness point");
    return num_.evaluate(point) / d;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend int compare(const RatFunc& a, const RatFunc& b) {
    if (int c = compare(a.num_, b.num_)) return c;
    return compare(a.den_, b.den_);
  }

 private:
  static RatFunc from_canonical(Poly n, Poly d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = n_is_zero(r.num_) ? Poly(1) : std::move(d);
    return r;
  }
  static bool n_is_zero(const Poly& p) { return p.is_zero(); }

  void normalize() {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    if (!den_.is_constant()) {
      const Poly g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
      }
    }
    const Rational lc = den_.leading_coefficient();
    if (lc != 1) {
      num_ = num_.scaled(1 / lc);
      den_ = den_.scaled(1 / lc);
    }
  }

  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }

}  // namespace qav
