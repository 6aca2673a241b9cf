#pragma once

#include <optional>
#include <vector>

#include "qav/linalg/matrix.hpp"

namespace qav {

/// Linear algebra over an exact field T (Rational, RatFunc or Scalar).
/// Pivots are always the first nonzero entry scanning down a column, so
/// every result is a deterministic function of the input.

template <typename T>
struct Rref {
  Matrix<T> matrix;                 // reduced row echelon form, rank rows kept
  std::vector<std::size_t> pivots;  // pivot column of each kept row
  std::size_t rank() const { return pivots.size(); }
};

template <typename T>
Rref<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    const T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {m.rows_range(0, row), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).rank();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// with a 1 in that column.
template <typename T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m) {
  const Rref<T> r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.matrix(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, or nullopt if inconsistent.
template <typename T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) fail(ErrorKind::DimensionMismatch, "solve: right-hand side length");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const Rref<T> red = rref(std::move(aug));
  std::vector<T> x(a.cols(), T(0));
  for (std::size_t k = 0; k < red.pivots.size(); ++k) {
    if (red.pivots[k] == a.cols()) return std::nullopt;
    x[red.pivots[k]] = red.matrix(k, a.cols());
  }
  return x;
}

/// Inverse of a square matrix, or nullopt if singular.
template <typename T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  const Rref<T> red = rref(a.hcat(Matrix<T>::identity(n)));
  if (red.rank() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  return red.matrix.columns(n, n);
}

template <typename T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && is_zero(m(p, col))) ++p;
    if (p == n) return T(0);
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    const T inv = T(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      const T f = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Indices of a maximal independent subset of columns, greedy left to right.
template <typename T>
std::vector<std::size_t> independent_columns(const Matrix<T>& m) {
  return rref(m).pivots;
}

}  // namespace qav
