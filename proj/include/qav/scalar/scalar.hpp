#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qav/scalar/ratfunc.hpp"

namespace qav {

/// Ordered, immutable list of real transcendental symbols. Every Poly
/// variable index refers to a position in one such table.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxSymbols)
      fail(ErrorKind::InvalidArgument, "at most " + std::to_string(kMaxSymbols) + " symbols supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) fail(ErrorKind::InvalidArgument, "empty symbol name");
      if (names_[i] == "i") fail(ErrorKind::InvalidArgument, "'i' is reserved for the imaginary unit");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) fail(ErrorKind::DuplicateName, "duplicate symbol " + names_[i]);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t k) const { return names_.at(k); }

  /// Index of a symbol, or -1.
  int find(const std::string& n) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == n) return static_cast<int>(k);
    return -1;
  }

  friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

 private:
  std::vector<std::string> names_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

/// Rational assignment of every symbol, used for witness evaluation.
using WitnessPoint = std::array<Rational, kMaxSymbols>;

/// Element re + i*im of K = Q(i)(r_1..r_s); the symbols are real, so
/// conjugation negates im.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int c) : re_(c) {}                       // NOLINT(google-explicit-constructor)
  Scalar(const Rational& c) : re_(c) {}           // NOLINT(google-explicit-constructor)
  Scalar(RatFunc re) : re_(std::move(re)) {}      // NOLINT(google-explicit-constructor)
  Scalar(Poly re) : re_(std::move(re)) {}         // NOLINT(google-explicit-constructor)
  Scalar(RatFunc re, RatFunc im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar imaginary_unit() { return Scalar(RatFunc(0), RatFunc(1)); }
  static Scalar symbol(std::size_t index) { return Scalar(RatFunc(Poly::variable(index))); }

  const RatFunc& re() const { return re_; }
  const RatFunc& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_rational() const { return im_.is_zero() && re_.is_constant(); }

  Scalar conj() const { return {re_, -im_}; }
  Scalar operator-() const { return {-re_, -im_}; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_real() && b.is_real()) return Scalar(a.re_ * b.re_);
    if (a.is_real()) return {a.re_ * b.re_, a.re_ * b.im_};
    if (b.is_real()) return {a.re_ * b.re_, a.im_ * b.re_};
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero scalar");
    if (b.is_real()) return {a.re_ / b.re_, a.im_ / b.re_};
    const RatFunc norm = b.re_ * b.re_ + b.im_ * b.im_;
    const Scalar num = a * b.conj();
    return {num.re_ / norm, num.im_ / norm};
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(unsigned e) const {
    Scalar result(1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Exact (re, im) at a rational point.
  std::pair<Rational, Rational> evaluate(const WitnessPoint& point) const {
    return {re_.evaluate(point), im_.evaluate(point)};
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  friend int compare(const Scalar& a, const Scalar& b) {
    if (int c = compare(a.re_, b.re_)) return c;
    return compare(a.im_, b.im_);
  }

 private:
  RatFunc re_;
  RatFunc im_;
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }

inline Scalar conj(const Scalar& x) { return x.conj(); }
inline RatFunc conj(const RatFunc& x) { return x; }
inline Rational conj(const Rational& x) { return x; }

}  // namespace qav
