#pragma once

#include <string>

#include "qav/scalar/scalar.hpp"

namespace qav {

namespace detail {

inline std::string monomial_string(const Monomial& m, const SymbolTable& table) {
  std::string out;
  for (std::size_t k = 0; k < kMaxSymbols; ++k) {
    if (m.exp[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += k < table.size() ? table.name(k) : "x" + std::to_string(k + 1);
    if (m.exp[k] > 1) out += '^' + std::to_string(m.exp[k]);
  }
  return out;
}

/// Appends the terms of p, optionally carrying a factor i in every term.
inline void append_terms(std::string& out, const Poly& p, const SymbolTable& table, bool imaginary) {
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational a = abs(c);
    std::string factors;
    if (a != 1) factors = a.get_str();
    if (imaginary) factors += factors.empty() ? "i" : "*i";
    const std::string mono = monomial_string(m, table);
    if (!mono.empty()) factors += factors.empty() ? mono : "*" + mono;
    if (factors.empty()) factors = "1";
    out += factors;
  }
}

}  // namespace detail

/// Canonical expression string; reparses to an identical Poly.
inline std::string to_string(const Poly& p, const SymbolTable& table) {
  if (p.is_zero()) return "0";
  std::string out;
  detail::append_terms(out, p, table, false);
  return out;
}

inline std::string to_string(const RatFunc& x, const SymbolTable& table) {
  if (x.is_polynomial()) return to_string(x.num(), table);
  return "(" + to_string(x.num(), table) + ")/(" + to_string(x.den(), table) + ")";
}

/// Canonical serialization of a Scalar in the expression grammar.
inline std::string to_string(const Scalar& x, const SymbolTable& table) {
  if (x.is_zero()) return "0";
  std::string out;
  if (!x.re().is_zero()) out = to_string(x.re(), table);
  if (x.im().is_zero()) return out;
  if (x.im().is_polynomial()) {
    detail::append_terms(out, x.im().num(), table, true);
    return out;
  }
  if (!out.empty()) out += " + ";
  out += "i*" + to_string(x.im(), table);
  return out;
}

}  // namespace qav
