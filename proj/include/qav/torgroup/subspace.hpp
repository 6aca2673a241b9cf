#pragma once

#include <string>
#include <vector>

#include "qav/linalg/field.hpp"
#include "qav/scalar/format.hpp"
#include "qav/scalar/scalar.hpp"

namespace qav {

using RealVector = std::vector<RatFunc>;
using ComplexVector = std::vector<Scalar>;
using RealMatrix = Matrix<RatFunc>;
using ComplexMatrix = Matrix<Scalar>;

/// Realification of C^n: coordinates (re_1..re_n, im_1..im_n).
inline RealVector realify(const ComplexVector& v) {
  const std::size_t n = v.size();
  RealVector out(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = v[k].re();
    out[n + k] = v[k].im();
  }
  return out;
}

inline ComplexVector complexify(const RealVector& v) {
  const std::size_t n = v.size() / 2;
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = Scalar(v[k], v[n + k]);
  return out;
}

/// Complex structure J(x, y) = (-y, x), i.e. multiplication by i.
inline RealVector apply_j(const RealVector& v) {
  const std::size_t n = v.size() / 2;
  RealVector out(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = -v[n + k];
    out[n + k] = v[k];
  }
  return out;
}

/// Column j of the result is the realified column j of m.
inline RealMatrix realify(const ComplexMatrix& m) {
  RealMatrix out(2 * m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) {
      out(r, c) = m(r, c).re();
      out(m.rows() + r, c) = m(r, c).im();
    }
  return out;
}

/// Linear subspace of the realified space R^{2n}, defined over Q(r).
/// The basis is the reduced row echelon form of any spanning set, so
/// equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<RealVector>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Rref<RatFunc> r = rref(RealMatrix::from_rows(vectors, ambient));
    s.basis_ = std::move(r.matrix);
    s.pivots_ = std::move(r.pivots);
    return s;
  }
  static Subspace full(std::size_t ambient) {
    std::vector<RealVector> e;
    for (std::size_t k = 0; k < ambient; ++k) e.push_back(unit(ambient, k));
    return span(ambient, e);
  }
  /// Complex span of the given vectors of C^n.
  static Subspace complex_span(std::size_t n, const std::vector<ComplexVector>& vectors) {
    std::vector<RealVector> real;
    for (const auto& v : vectors) {
      real.push_back(realify(v));
      real.push_back(qav::apply_j(real.back()));
    }
    return span(2 * n, real);
  }
  /// Span of the columns of a realified matrix.
  static Subspace column_span(const RealMatrix& m) {
    std::vector<RealVector> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
    return span(m.rows(), cols);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const RealMatrix& basis() const { return basis_; }
  RealVector basis_vector(std::size_t k) const { return basis_.row_vector(k); }
  std::vector<RealVector> basis_vectors() const {
    std::vector<RealVector> out;
    for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_vector(k));
    return out;
  }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Exact membership test by reduction against the echelon basis.
  bool contains(RealVector v) const {
    if (v.size() != ambient_) fail(ErrorKind::DimensionMismatch, "vector length differs from subspace ambient");
    for (std::size_t k = 0; k < dim(); ++k) {
      const RatFunc f = v[pivots_[k]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < ambient_; ++c)
        if (!basis_(k, c).is_zero()) v[c] -= f * basis_(k, c);
    }
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  bool contains(const Subspace& other) const {
    for (std::size_t k = 0; k < other.dim(); ++k)
      if (!contains(other.basis_vector(k))) return false;
    return true;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    auto vs = a.basis_vectors();
    for (auto& v : b.basis_vectors()) vs.push_back(std::move(v));
    return span(a.ambient_, vs);
  }

  Subspace apply_j() const {
    std::vector<RealVector> vs;
    for (const auto& v : basis_vectors()) vs.push_back(qav::apply_j(v));
    return span(ambient_, vs);
  }
  bool is_j_invariant() const { return contains(apply_j()); }

  /// Rows spanning the annihilator {w : w . v = 0 for all v in this}.
  RealMatrix annihilator() const {
    if (dim() == 0) return RealMatrix::identity(ambient_);
    const auto ker = kernel_basis(basis_);
    return RealMatrix::from_rows(ker, ambient_);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  /// Total order on canonical forms.
  friend int compare(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (a.pivots_[k] != b.pivots_[k]) return a.pivots_[k] < b.pivots_[k] ? -1 : 1;
    }
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.ambient_; ++c)
        if (int x = compare(a.basis_(r, c), b.basis_(r, c))) return x;
    return 0;
  }

  std::string key(const SymbolTable& table) const {
    std::string s = std::to_string(ambient_) + "|";
    for (std::size_t r = 0; r < dim(); ++r) {
      s += "[";
      for (std::size_t c = 0; c < ambient_; ++c) s += (c ? "," : "") + to_string(basis_(r, c), table);
      s += "]";
    }
    return s;
  }

  static RealVector unit(std::size_t ambient, std::size_t k) {
    RealVector e(ambient, RatFunc(0));
    e[k] = RatFunc(1);
    return e;
  }

 private:
  std::size_t ambient_ = 0;
  RealMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) fail(ErrorKind::DimensionMismatch, "subspaces live in different ambients");
  if (a.is_zero() || b.is_zero()) return Subspace(a.ambient());
  // Annihilator of the intersection is the sum of annihilators.
  const RealMatrix ann = a.annihilator().vcat(b.annihilator());
  const auto ker = kernel_basis(ann);
  return Subspace::span(a.ambient(), ker);
}

/// Largest J-invariant subspace s cap J(s).
inline Subspace max_complex_subspace(const Subspace& s) { return intersect(s, s.apply_j()); }

/// Greedy complement of `inner` inside `outer`: outer's canonical basis
/// vectors are appended in order whenever they increase the dimension.
/// `seed` vectors (which must lie in outer) are tried first.
inline Subspace greedy_complement(const Subspace& inner, const Subspace& outer,
                                  const std::vector<RealVector>& seed = {}) {
  Subspace acc = inner;
  std::vector<RealVector> chosen;
  auto consider = [&](const RealVector& v) {
    if (acc.dim() == outer.dim() || acc.contains(v)) return;
    chosen.push_back(v);
    acc = acc + Subspace::span(outer.ambient(), {v});
  };
  for (const auto& v : seed) consider(v);
  for (const auto& v : outer.basis_vectors()) consider(v);
  return Subspace::span(outer.ambient(), chosen);
}

/// Greedy J-invariant complement of the J-invariant `inner` inside the
/// J-invariant `outer`: pairs {v, Jv} are appended in basis order.
inline Subspace greedy_complex_complement(const Subspace& inner, const Subspace& outer,
                                          const std::vector<RealVector>& seed = {}) {
  Subspace acc = inner;
  std::vector<RealVector> chosen;
  auto consider = [&](const RealVector& v) {
    if (acc.dim() == outer.dim() || acc.contains(v)) return;
    chosen.push_back(v);
    chosen.push_back(apply_j(v));
    acc = acc + Subspace::span(outer.ambient(), {v, apply_j(v)});
  };
  for (const auto& v : seed) consider(v);
  for (const auto& v : outer.basis_vectors()) consider(v);
  return Subspace::span(outer.ambient(), chosen);
}

/// Complex basis of a J-invariant subspace: greedy over the canonical
/// basis, skipping vectors already in the complex span.
inline std::vector<ComplexVector> complex_basis(const Subspace& s) {
  std::vector<ComplexVector> out;
  Subspace acc(s.ambient());
  for (const auto& v : s.basis_vectors()) {
    if (acc.contains(v)) continue;
    out.push_back(complexify(v));
    acc = acc + Subspace::span(s.ambient(), {v, apply_j(v)});
  }
  return out;
}

/// Complex dimension of the complex span of s.
inline std::size_t complex_dim(const Subspace& s) { return complex_basis(s + s.apply_j()).size(); }

}  // namespace qav
