#pragma once

#include <vector>

#include "qav/torgroup/period_lattice.hpp"

namespace qav {

/// L cap Gamma for the complex line L = C * line_generator.
struct LineIntersection {
  ComplexVector line_generator;
  IntLattice lattice;
  std::size_t rank = 0;
};

namespace detail {

inline void check_line_rank(const LineIntersection& li, const PeriodLattice& p) {
  if (p.is_discrete() && li.rank > 2)
    fail(ErrorKind::InternalInconsistency, "a discrete subgroup of a complex line has rank above 2");
}

}  // namespace detail

/// Integer vectors a with P a proportional to lambda: every 2x2 minor of
/// [P a | lambda] is a K-linear form in a, split into rational
/// conditions by monomial.
inline LineIntersection line_lattice_intersection(const ComplexVector& lambda, const PeriodLattice& p) {
  if (lambda.size() != p.n()) fail(ErrorKind::DimensionMismatch, "direction length differs from n");
  bool nonzero = false;
  for (const auto& x : lambda) nonzero = nonzero || !x.is_zero();
  if (!nonzero) fail(ErrorKind::ZeroDirection, "line direction is zero");
  const std::size_t n = p.n(), N = p.rank();
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      std::vector<Scalar> row(N);
      for (std::size_t j = 0; j < N; ++j) row[j] = p.periods()(k, j) * lambda[l] - p.periods()(l, j) * lambda[k];
      rows.push_back(std::move(row));
    }
  LineIntersection out;
  out.line_generator = lambda;
  out.lattice = rows.empty() ? IntLattice::full(N) : integer_kernel(rational_conditions(ComplexMatrix::from_rows(rows, N)));
  out.rank = out.lattice.rank();
  detail::check_line_rank(out, p);
  return out;
}

/// Precomputed form of the minor conditions for lines through lattice
/// points: for lambda = P a0 each minor is the bilinear expression
/// sum_{j,s} (P_kj P_ls - P_lj P_ks) a_j a0_s, so the rational
/// conditions on a are integer matrices applied to a0.
class LineSearch {
 public:
  explicit LineSearch(const PeriodLattice& p) : p_(&p) {
    const std::size_t n = p.n(), N = p.rank();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) {
        ComplexMatrix b(N, N);
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t s = 0; s < N; ++s)
            b(j, s) = p.periods()(k, j) * p.periods()(l, s) - p.periods()(l, j) * p.periods()(k, s);
        const MonomialDecomposition d = monomial_decompose(b);
        for (const auto* parts : {&d.re, &d.im})
          for (const auto& comp : *parts)
            if (!comp.is_zero_matrix()) components_.push_back(clear_denominators(comp));
      }
  }

  /// Intersection lattice of the line through P a0 (a0 != 0).
  IntLattice lattice_through(const IntVector& a0) const {
    const std::size_t N = p_->rank();
    if (components_.empty()) return IntLattice::full(N);
    IntMatrix rows(components_.size(), N);
    for (std::size_t c = 0; c < components_.size(); ++c)
      for (std::size_t j = 0; j < N; ++j) {
        Integer acc = 0;
        for (std::size_t s = 0; s < N; ++s)
          if (!qav::is_zero(a0[s]) && !qav::is_zero(components_[c](j, s))) acc += components_[c](j, s) * a0[s];
        rows(c, j) = acc;
      }
    return integer_kernel(rows);
  }

  LineIntersection intersect(const IntVector& a0) const {
    LineIntersection out;
    out.line_generator = p_->image(a0);
    out.lattice = lattice_through(a0);
    out.rank = out.lattice.rank();
    detail::check_line_rank(out, *p_);
    return out;
  }

 private:
  static IntMatrix clear_denominators(const RatMatrix& m) {
    Integer l = 1;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).get_den());
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_num() * (l / m(r, c).get_den());
    return out;
  }

  const PeriodLattice* p_;
  std::vector<IntMatrix> components_;
};

}  // namespace qav
