#pragma once

#include <vector>

#include "qav/linalg/matrix.hpp"
#include "qav/scalar/scalar.hpp"

namespace qav {

inline Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_one()) return b.monic();
  if (b.is_one()) return a.monic();
  return (a * b).exact_div(gcd(a, b)).monic();
}

/// m = (1/denominator) * sum_k (re[k] + i*im[k]) * basis[k], with the
/// basis monomials distinct, sorted by decreasing grlex and every
/// component matrix rational.
struct MonomialDecomposition {
  Poly denominator;
  std::vector<Monomial> basis;
  std::vector<Matrix<Rational>> re;
  std::vector<Matrix<Rational>> im;
};

namespace detail {

/// Polynomial numerators of x after multiplying by the common denominator.
inline std::pair<Poly, Poly> clear_denominator(const Scalar& x, const Poly& common) {
  Poly re = x.re().num() * common.exact_div(x.re().den());
  Poly im = x.im().num() * common.exact_div(x.im().den());
  return {std::move(re), std::move(im)};
}

inline void insert_monomial(std::vector<Monomial>& basis, const Monomial& m) {
  auto it = basis.begin();
  while (it != basis.end() && grlex_greater(m, *it)) ++it;
  if (it == basis.end() || !(*it == m)) basis.insert(it, m);
}

inline std::size_t monomial_index(const std::vector<Monomial>& basis, const Monomial& m) {
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (basis[k] == m) return k;
  return basis.size();
}

}  // namespace detail

/// Splits a Scalar matrix into rational coefficient matrices per monomial.
/// Valid as a test of Q-linear relations because the symbols are
/// algebraically independent.
inline MonomialDecomposition monomial_decompose(const Matrix<Scalar>& m) {
  MonomialDecomposition out;
  out.denominator = Poly(1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.denominator = poly_lcm(out.denominator, m(r, c).re().den());
      out.denominator = poly_lcm(out.denominator, m(r, c).im().den());
    }
  std::vector<std::pair<Poly, Poly>> cleared(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cleared[r * m.cols() + c] = detail::clear_denominator(m(r, c), out.denominator);
      for (const auto* p : {&cleared[r * m.cols() + c].first, &cleared[r * m.cols() + c].second})
        for (const auto& [mono, coef] : p->terms()) detail::insert_monomial(out.basis, mono);
    }
  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    out.re.emplace_back(m.rows(), m.cols());
    out.im.emplace_back(m.rows(), m.cols());
  }
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& [mono, coef] : cleared[r * m.cols() + c].first.terms())
        out.re[detail::monomial_index(out.basis, mono)](r, c) = coef;
      for (const auto& [mono, coef] : cleared[r * m.cols() + c].second.terms())
        out.im[detail::monomial_index(out.basis, mono)](r, c) = coef;
    }
  return out;
}

/// Reassembles the Scalar matrix from a decomposition.
inline Matrix<Scalar> recompose(const MonomialDecomposition& d, std::size_t rows, std::size_t cols) {
  Matrix<Scalar> m(rows, cols);
  const RatFunc inv_den = RatFunc(Poly(1), d.denominator);
  for (std::size_t k = 0; k < d.basis.size(); ++k) {
    const Poly mono(d.basis[k], Rational(1));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        m(r, c) += Scalar(RatFunc(mono.scaled(d.re[k](r, c))) * inv_den, RatFunc(mono.scaled(d.im[k](r, c))) * inv_den);
  }
  return m;
}

/// Rational linear conditions equivalent to "row . x = 0" for every row
/// of `rows`, where x ranges over rational vectors. Each row is cleared
/// of denominators separately, then split by monomial and by real and
/// imaginary part.
inline Matrix<Rational> rational_conditions(const Matrix<Scalar>& rows) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    Poly common(1);
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      common = poly_lcm(common, rows(r, c).re().den());
      common = poly_lcm(common, rows(r, c).im().den());
    }
    std::vector<Monomial> basis;
    std::vector<std::pair<Poly, Poly>> cleared;
    cleared.reserve(rows.cols());
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      cleared.push_back(detail::clear_denominator(rows(r, c), common));
      for (const auto* p : {&cleared.back().first, &cleared.back().second})
        for (const auto& [mono, coef] : p->terms()) detail::insert_monomial(basis, mono);
    }
    const std::size_t base = out.size();
    out.resize(base + 2 * basis.size(), std::vector<Rational>(rows.cols(), Rational(0)));
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      for (const auto& [mono, coef] : cleared[c].first.terms())
        out[base + 2 * detail::monomial_index(basis, mono)][c] = coef;
      for (const auto& [mono, coef] : cleared[c].second.terms())
        out[base + 2 * detail::monomial_index(basis, mono) + 1][c] = coef;
    }
  }
  // Drop all-zero rows (imaginary parts of real rows, typically).
  std::vector<std::vector<Rational>> kept;
  for (auto& row : out) {
    bool nonzero = false;
    for (const auto& x : row) nonzero = nonzero || !is_zero(x);
    if (nonzero) kept.push_back(std::move(row));
  }
  return Matrix<Rational>::from_rows(kept, rows.cols());
}

inline Matrix<Scalar> to_scalar(const Matrix<RatFunc>& m) {
  return m.map<Scalar>([](const RatFunc& x) { return Scalar(x); });
}

}  // namespace qav
