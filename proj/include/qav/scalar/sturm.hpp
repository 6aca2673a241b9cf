#pragma once

#include <vector>

#include "qav/number.hpp"

namespace qav::sturm {

/// Univariate polynomial over Q, coefficients indexed by power.
using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

inline UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

inline UPoly remainder(UPoly a, const UPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Rational evaluate(const UPoly& p, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
  return v;
}

/// p, p', -rem(p, p'), ... down to a nonzero constant.
inline std::vector<UPoly> chain(UPoly p) {
  trim(p);
  std::vector<UPoly> seq;
  if (p.empty()) return seq;
  seq.push_back(p);
  UPoly d = derivative(p);
  if (d.empty()) return seq;
  seq.push_back(d);
  while (true) {
    UPoly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return seq;
}

inline int sign_variations(const std::vector<UPoly>& seq, const Rational& x) {
  int variations = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

/// Number of distinct real roots in the half-open interval (lo, hi].
inline int count_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
  const auto seq = chain(p);
  if (seq.empty()) return -1;  // zero polynomial
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

/// True when p has no root in the closed interval [lo, hi] (p nonzero).
inline bool root_free(const UPoly& p, const Rational& lo, const Rational& hi) {
  UPoly q = p;
  trim(q);
  if (q.empty()) return false;
  if (is_zero(evaluate(q, lo))) return false;
  return count_roots(q, lo, hi) == 0;
}

}  // namespace qav::sturm
