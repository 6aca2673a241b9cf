#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qav/lattice/normal_form.hpp"

namespace qav {

using IntVector = std::vector<Integer>;

/// Finitely generated subgroup of Z^k, stored as a column HNF basis.
/// Two lattices are equal iff their bases are identical.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

  /// Lattice generated by the columns of `generators` (k rows).
  static IntLattice from_generators(const IntMatrix& generators) {
    IntLattice l;
    l.ambient_ = generators.rows();
    HnfResult h = hnf(generators);
    l.basis_ = std::move(h.h);
    l.pivot_rows_ = std::move(h.pivot_rows);
    return l;
  }
  static IntLattice from_vectors(std::size_t ambient, const std::vector<IntVector>& vs) {
    return from_generators(IntMatrix::from_columns(vs, ambient));
  }
  static IntLattice full(std::size_t ambient) { return from_generators(IntMatrix::identity(ambient)); }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  IntVector basis_vector(std::size_t j) const { return basis_.column(j); }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }
  bool is_zero() const { return rank() == 0; }

  /// Coordinates of v in the basis, or nullopt when v is not a member.
  std::optional<IntVector> coordinates(IntVector v) const {
    if (v.size() != ambient_) fail(ErrorKind::DimensionMismatch, "vector length differs from ambient rank");
    IntVector coords(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      const std::size_t p = pivot_rows_[j];
      if (!mpz_divisible_p(v[p].get_mpz_t(), basis_(p, j).get_mpz_t())) return std::nullopt;
      coords[j] = v[p] / basis_(p, j);
      if (qav::is_zero(coords[j])) continue;
      for (std::size_t r = p; r < ambient_; ++r) v[r] -= coords[j] * basis_(r, j);
    }
    for (const auto& x : v)
      if (!qav::is_zero(x)) return std::nullopt;
    return coords;
  }
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
  bool contains(const IntLattice& other) const {
    check_ambient(other);
    for (std::size_t j = 0; j < other.rank(); ++j)
      if (!contains(other.basis_vector(j))) return false;
    return true;
  }

  friend IntLattice operator+(const IntLattice& a, const IntLattice& b) {
    a.check_ambient(b);
    return from_generators(a.basis_.hcat(b.basis_));
  }

  /// Image of the lattice under an integer matrix (rows = new ambient).
  IntLattice image(const IntMatrix& map) const {
    if (map.cols() != ambient_) fail(ErrorKind::DimensionMismatch, "image: map column count");
    if (rank() == 0) return IntLattice(map.rows());
    return from_generators(map * basis_);
  }

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  /// Stable textual key, used for canonical ordering.
  std::string key() const {
    std::string s = std::to_string(ambient_) + ":";
    for (std::size_t j = 0; j < rank(); ++j) {
      s += "[";
      for (std::size_t r = 0; r < ambient_; ++r) s += (r ? "," : "") + basis_(r, j).get_str();
      s += "]";
    }
    return s;
  }

 private:
  void check_ambient(const IntLattice& o) const {
    if (o.ambient_ != ambient_) fail(ErrorKind::DimensionMismatch, "lattices live in different ambient ranks");
  }

  std::size_t ambient_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

/// Saturated lattice {x in Z^cols : m x = 0}. Rows are made integral,
/// reduced by fraction-free elimination, and the kernel is read off the
/// unimodular transform of a column HNF, so it is saturated by
/// construction.
inline IntLattice integer_kernel(const RatMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntLattice::full(n);
  const IntMatrix echelon = bareiss_echelon(clear_row_denominators(m));
  if (echelon.rows() == 0) return IntLattice::full(n);
  const HnfResult h = hnf(echelon);
  return IntLattice::from_generators(h.u.columns(h.rank(), n - h.rank()));
}

inline IntLattice integer_kernel(const IntMatrix& m) { return integer_kernel(to_rat_matrix(m)); }

/// Smallest saturated lattice containing l: Z^k intersected with its
/// rational span.
inline IntLattice saturate(const IntLattice& l) {
  if (l.rank() == 0) return l;
  // Annihilator of the span: rational kernel of the transposed basis.
  const auto ann = kernel_basis(to_rat_matrix(l.basis().transpose()));
  if (ann.empty()) return IntLattice::full(l.ambient_rank());
  return integer_kernel(RatMatrix::from_rows(ann, l.ambient_rank()));
}

inline bool is_saturated(const IntLattice& l) { return saturate(l) == l; }

inline IntLattice intersect(const IntLattice& a, const IntLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) fail(ErrorKind::DimensionMismatch, "intersect: ambient ranks differ");
  const std::size_t k = a.ambient_rank();
  if (a.rank() == 0 || b.rank() == 0) return IntLattice(k);
  const IntMatrix stacked = a.basis().hcat(b.basis().scaled(Integer(-1)));
  const IntLattice rel = integer_kernel(stacked);
  if (rel.rank() == 0) return IntLattice(k);
  return IntLattice::from_generators(a.basis() * rel.basis().rows_range(0, a.rank()));
}

inline IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) { return a + b; }

/// Structure of big / small. Throws NotASublattice unless small <= big.
inline QuotientStructure quotient(const IntLattice& big, const IntLattice& small) {
  if (big.ambient_rank() != small.ambient_rank())
    fail(ErrorKind::DimensionMismatch, "quotient: ambient ranks differ");
  IntMatrix coords(big.rank(), small.rank());
  for (std::size_t j = 0; j < small.rank(); ++j) {
    auto c = big.coordinates(small.basis_vector(j));
    if (!c) fail(ErrorKind::NotASublattice, "lattice is not contained in the larger lattice");
    for (std::size_t r = 0; r < big.rank(); ++r) coords(r, j) = (*c)[r];
  }
  if (small.rank() == 0) {
    QuotientStructure q;
    q.free_rank = big.rank();
    return q;
  }
  return snf(coords).divisors;
}

/// Unimodular k x k matrix whose first rank(l) columns are the basis of
/// the saturated lattice l. Throws when l is not saturated.
inline IntMatrix unimodular_completion(const IntLattice& l) {
  const std::size_t k = l.ambient_rank(), r = l.rank();
  if (r == 0) return IntMatrix::identity(k);
  if (!is_saturated(l)) fail(ErrorKind::OrderingInvalid, "lattice is not saturated; cannot complete to a basis");
  const HnfResult h = hnf(l.basis().transpose());
  // B^T U = [I | 0], hence (U^-1)^T has B as its first r columns.
  IntMatrix completion = unimodular_inverse(h.u).transpose();
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t row = 0; row < k; ++row)
      if (completion(row, j) != l.basis()(row, j))
        fail(ErrorKind::InternalInconsistency, "basis completion does not reproduce the lattice basis");
  return completion;
}

/// Calls `visit` for every nonzero vector of l with max-norm <= bound.
/// Exact: coefficients are bounded row by row through the HNF pivots.
inline void enumerate_box(const IntLattice& l, const Integer& bound, const std::function<void(const IntVector&)>& visit) {
  const std::size_t r = l.rank(), k = l.ambient_rank();
  if (r == 0) return;
  std::vector<Integer> coeff(r);
  IntVector partial(k, Integer(0));
  std::function<void(std::size_t)> recurse = [&](std::size_t j) {
    if (j == r) {
      bool nonzero = false;
      for (const auto& x : partial) {
        if (abs(x) > bound) return;
        nonzero = nonzero || !is_zero(x);
      }
      if (nonzero) visit(partial);
      return;
    }
    const std::size_t p = l.pivot_rows()[j];
    const Integer& piv = l.basis()(p, j);
    // partial[p] + c * piv must lie in [-bound, bound].
    Integer lo, hi;
    {
      const Integer a = -bound - partial[p], b = bound - partial[p];
      mpz_cdiv_q(lo.get_mpz_t(), a.get_mpz_t(), piv.get_mpz_t());
      mpz_fdiv_q(hi.get_mpz_t(), b.get_mpz_t(), piv.get_mpz_t());
    }
    for (Integer c = lo; c <= hi; ++c) {
      for (std::size_t row = p; row < k; ++row) partial[row] += c * l.basis()(row, j);
      recurse(j + 1);
      for (std::size_t row = p; row < k; ++row) partial[row] -= c * l.basis()(row, j);
    }
  };
  recurse(0);
}

}  // namespace qav
