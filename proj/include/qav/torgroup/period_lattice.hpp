#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qav/lattice/int_lattice.hpp"
#include "qav/scalar/decompose.hpp"
#include "qav/scalar/format.hpp"
#include "qav/torgroup/subspace.hpp"

namespace qav {

/// Subgroup of C^n generated by the n + m columns of a period matrix
/// with entries in K. Construction checks that the columns are
/// Z-linearly independent, so rank = n + m exactly. Discreteness (real
/// independence) is a separate property.
class PeriodLattice {
 public:
  PeriodLattice(SymbolTablePtr table, ComplexMatrix periods)
      : table_(std::move(table)), periods_(std::move(periods)), realified_(realify(periods_)) {
    if (!table_) table_ = std::make_shared<const SymbolTable>();
    if (periods_.cols() < periods_.rows())
      fail(ErrorKind::RankDeficient, "period matrix has fewer generators than its complex dimension");
    const IntLattice relations = integer_kernel(rational_conditions(periods_));
    if (!relations.is_zero()) {
      std::string rel;
      for (const auto& x : relations.basis_vector(0)) rel += (rel.empty() ? "" : ", ") + x.get_str();
      fail(ErrorKind::RankDeficient, "generators satisfy the integer relation (" + rel + ")");
    }
    discrete_ = qav::rank(realified_) == periods_.cols();
  }

  const SymbolTablePtr& table() const { return table_; }
  const SymbolTable& symbols() const { return *table_; }
  const ComplexMatrix& periods() const { return periods_; }
  const RealMatrix& realified() const { return realified_; }

  std::size_t n() const { return periods_.rows(); }
  std::size_t rank() const { return periods_.cols(); }
  /// rank - n; equals m for a toroidal group.
  std::size_t m() const { return rank() - n(); }
  std::size_t real_ambient() const { return 2 * n(); }

  /// Realified generators independent over Q(r), hence over R.
  bool is_discrete() const { return discrete_; }

  ComplexVector generator(std::size_t j) const { return periods_.column(j); }

  /// P a for integer coordinates a.
  ComplexVector image(const IntVector& a) const {
    if (a.size() != rank()) fail(ErrorKind::DimensionMismatch, "coordinate vector length");
    ComplexVector out(n(), Scalar(0));
    for (std::size_t j = 0; j < rank(); ++j) {
      if (is_zero(a[j])) continue;
      const Scalar c{Rational(a[j])};
      for (std::size_t r = 0; r < n(); ++r)
        if (!periods_(r, j).is_zero()) out[r] += c * periods_(r, j);
    }
    return out;
  }

  /// Period matrix of the generators P * basis (new generating set).
  PeriodLattice rebased(const IntMatrix& basis) const {
    ComplexMatrix q(n(), basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      const auto v = image(basis.column(j));
      for (std::size_t r = 0; r < n(); ++r) q(r, j) = v[r];
    }
    return PeriodLattice(table_, std::move(q));
  }

 private:
  SymbolTablePtr table_;
  ComplexMatrix periods_;
  RealMatrix realified_;
  bool discrete_ = false;
};

/// Span of the realified generators (R_Gamma).
inline Subspace real_span(const PeriodLattice& p) { return Subspace::column_span(p.realified()); }

/// Complex rank of the period matrix over K.
inline std::size_t complex_rank(const PeriodLattice& p) { return rank(p.periods()); }

/// {a in Z^{n+m} : P a in E}; saturated by construction.
inline IntLattice subgroup_lattice(const Subspace& e, const PeriodLattice& p) {
  if (e.ambient() != p.real_ambient()) fail(ErrorKind::DimensionMismatch, "subspace ambient differs from 2n");
  if (e.dim() == e.ambient()) return IntLattice::full(p.rank());
  const RealMatrix cond = e.annihilator() * p.realified();
  return integer_kernel(rational_conditions(to_scalar(cond)));
}

/// Standard splitting R_Gamma = Cm + W, V = Cm + W + JW.
struct Splitting {
  Subspace cm;
  Subspace w;
};

inline Splitting standard_splitting(const PeriodLattice& p) {
  const Subspace rg = real_span(p);
  Splitting s{max_complex_subspace(rg), Subspace(p.real_ambient())};
  s.w = greedy_complement(s.cm, rg);
  if (s.cm.dim() + 2 * s.w.dim() != p.real_ambient())
    fail(ErrorKind::DegenerateSpan, "real span does not generate C^n as a complex space");
  return s;
}

/// The lattice E cap Gamma expressed as a period lattice of E itself.
struct SubPeriodLattice {
  IntLattice lattice;                    // Gamma-coordinates of E cap Gamma
  std::vector<ComplexVector> frame;      // complex basis of the span, taken from lattice images
  std::optional<PeriodLattice> periods;  // coordinates of the lattice basis in `frame`
  std::size_t complex_dim_of_e = 0;
  /// Whether the lattice spans E over C.
  bool spans() const { return frame.size() == complex_dim_of_e; }
};

/// Chooses a complex frame greedily among the images of the lattice
/// basis and expresses every basis image in it.
inline SubPeriodLattice sub_period_lattice(const Subspace& e, const IntLattice& lattice, const PeriodLattice& p) {
  SubPeriodLattice out;
  out.lattice = lattice;
  out.complex_dim_of_e = e.dim() / 2;
  std::vector<ComplexVector> images;
  for (std::size_t j = 0; j < lattice.rank(); ++j) images.push_back(p.image(lattice.basis_vector(j)));
  if (images.empty()) return out;
  const ComplexMatrix all = ComplexMatrix::from_columns(images, p.n());
  for (auto c : independent_columns(all)) out.frame.push_back(images[c]);
  const ComplexMatrix frame = ComplexMatrix::from_columns(out.frame, p.n());
  ComplexMatrix coords(out.frame.size(), images.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    auto x = solve(frame, images[j]);
    if (!x) fail(ErrorKind::InternalInconsistency, "lattice image outside its own complex span");
    for (std::size_t r = 0; r < x->size(); ++r) coords(r, j) = (*x)[r];
  }
  out.periods.emplace(p.table(), std::move(coords));
  return out;
}

}  // namespace qav
