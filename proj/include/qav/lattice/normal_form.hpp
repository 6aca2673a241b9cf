#pragma once

#include <tuple>
#include <vector>

#include "qav/linalg/field.hpp"
#include "qav/linalg/matrix.hpp"
#include "qav/number.hpp"

namespace qav {

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b) {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {g, s, t};
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

namespace detail {

// Column operations applied to both h and u.
inline void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (is_zero(f)) return;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!is_zero(m(r, src))) m(r, dst) += f * m(r, src);
}
inline void col_negate(IntMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}
/// (c_i, c_j) <- (s c_i + t c_j, x c_i + y c_j).
inline void col_combine(IntMatrix& m, std::size_t i, std::size_t j, const Integer& s, const Integer& t,
                        const Integer& x, const Integer& y) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Integer a = m(r, i), b = m(r, j);
    m(r, i) = s * a + t * b;
    m(r, j) = x * a + y * b;
  }
}

inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (is_zero(f)) return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_zero(m(src, c))) m(dst, c) += f * m(src, c);
}
inline void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace detail

/// Column Hermite normal form: m * u = [h | 0] with u unimodular.
/// h has `rank` columns; pivot rows strictly increase, pivots are
/// positive, entries left of a pivot lie in [0, pivot) and entries right
/// of a pivot are zero.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

inline HnfResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.cols());
  std::vector<std::size_t> pivot_rows;
  std::size_t col = 0;
  for (std::size_t row = 0; row < h.rows() && col < h.cols(); ++row) {
    for (std::size_t j = col + 1; j < h.cols(); ++j) {
      if (is_zero(h(row, j))) continue;
      if (is_zero(h(row, col))) {
        h.swap_columns(col, j);
        u.swap_columns(col, j);
        continue;
      }
      const Integer a = h(row, col), b = h(row, j);
      auto [g, s, t] = xgcd(a, b);
      const Integer x = -b / g, y = a / g;  // det [[s, x], [t, y]] = 1
      detail::col_combine(h, col, j, s, t, x, y);
      detail::col_combine(u, col, j, s, t, x, y);
    }
    if (is_zero(h(row, col))) continue;
    if (sgn(h(row, col)) < 0) {
      detail::col_negate(h, col);
      detail::col_negate(u, col);
    }
    for (std::size_t k = 0; k < col; ++k) {
      const Integer q = floor_div(h(row, k), h(row, col));
      detail::col_axpy(h, k, col, -q);
      detail::col_axpy(u, k, col, -q);
    }
    pivot_rows.push_back(row);
    ++col;
  }
  return {h.columns(0, col), std::move(u), std::move(pivot_rows)};
}

/// Smith normal form data: u * m * v = diag(d_1, ..., d_k, 0, ...) with
/// d_1 | d_2 | ... | d_k all positive.
struct QuotientStructure {
  std::vector<Integer> elementary_divisors;
  std::size_t free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  /// Order of the torsion part; the group order when finite.
  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& d : elementary_divisors) o *= d;
    return o;
  }
  friend bool operator==(const QuotientStructure&, const QuotientStructure&) = default;
};

struct SnfResult {
  QuotientStructure divisors;
  IntMatrix u, v;
  IntMatrix diagonal;
};

/// Smith normal form. `divisors.free_rank` is rows - rank, i.e. the free
/// rank of Z^rows / (column lattice of m).
inline SnfResult snf(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = d.rows(), pc = d.cols();
      for (std::size_t r = t; r < d.rows(); ++r)
        for (std::size_t c = t; c < d.cols(); ++c)
          if (!is_zero(d(r, c)) && (pr == d.rows() || abs(d(r, c)) < abs(d(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == d.rows()) goto done;
      d.swap_rows(t, pr);
      u.swap_rows(t, pr);
      d.swap_columns(t, pc);
      v.swap_columns(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (is_zero(d(r, t))) continue;
        const Integer q = floor_div(d(r, t), d(t, t));
        detail::row_axpy(d, r, t, -q);
        detail::row_axpy(u, r, t, -q);
        if (!is_zero(d(r, t))) clean = false;
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (is_zero(d(t, c))) continue;
        const Integer q = floor_div(d(t, c), d(t, t));
        detail::col_axpy(d, c, t, -q);
        detail::col_axpy(v, c, t, -q);
        if (!is_zero(d(t, c))) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t r = t + 1; r < d.rows() && divisible; ++r)
        for (std::size_t c = t + 1; c < d.cols(); ++c)
          if (!is_zero(d(r, c)) && !mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
            detail::row_axpy(d, t, r, 1);
            detail::row_axpy(u, t, r, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (sgn(d(t, t)) < 0) {
      detail::row_negate(d, t);
      detail::row_negate(u, t);
    }
  }
done:
  SnfResult res;
  for (std::size_t k = 0; k < t; ++k) res.divisors.elementary_divisors.push_back(d(k, k));
  res.divisors.free_rank = m.rows() - t;
  res.u = std::move(u);
  res.v = std::move(v);
  res.diagonal = std::move(d);
  return res;
}

inline IntMatrix to_int_matrix(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).get_den() != 1) fail(ErrorKind::InvalidArgument, "matrix entry is not an integer");
      out(r, c) = m(r, c).get_num();
    }
  return out;
}

inline RatMatrix to_rat_matrix(const IntMatrix& m) {
  return m.map<Rational>([](const Integer& z) { return Rational(z); });
}

/// Scales each row by the lcm of its denominators.
inline IntMatrix clear_row_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).get_den());
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  return out;
}

/// Fraction-free (Bareiss) row echelon form; rows of rank-deficient
/// input are dropped. Same rational row space as the input.
inline IntMatrix bareiss_echelon(IntMatrix m) {
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      for (std::size_t c = col + 1; c < m.cols(); ++c) {
        Integer v = m(row, col) * m(r, c) - m(r, col) * m(row, c);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(r, c) = std::move(v);
      }
      m(r, col) = 0;
    }
    prev = m(row, col);
    ++row;
  }
  return m.rows_range(0, row);
}

/// Integer inverse of a unimodular matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  auto inv = inverse(to_rat_matrix(u));
  if (!inv) fail(ErrorKind::InternalInconsistency, "matrix is not invertible");
  return to_int_matrix(*inv);
}

}  // namespace qav
