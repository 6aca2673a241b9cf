#pragma once

#include <string>
#include <vector>

#include "qav/riemann/form.hpp"
#include "qav/torgroup/closure.hpp"
#include "qav/torgroup/toroidal.hpp"

namespace qav {

/// Rows of U^T A U belonging to the first k1 generators, where the
/// unimodular U lists generators of Gamma_1 first.
inline IntMatrix build_A1(const IntMatrix& pairing, const IntMatrix& order, std::size_t k1) {
  const std::size_t N = pairing.rows();
  if (pairing.cols() != N || order.rows() != N || order.cols() != N || k1 > N)
    fail(ErrorKind::DimensionMismatch, "pairing, ordering and k1 do not match");
  const Integer det = determinant(to_rat_matrix(order)).get_num();
  if (abs(det) != 1) fail(ErrorKind::OrderingInvalid, "generator ordering is not unimodular");
  const IntMatrix full = order.transpose() * pairing * order;
  IntMatrix a1(k1, N);
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < N; ++j) a1(i, j) = full(i, j);
  return a1;
}

struct ComplementLattice {
  IntLattice lambda;
  IntLattice kernel;                   // S_1
  std::vector<std::size_t> selection;  // indices into the HNF basis of S_1
  Integer bottom_minor;
};

/// Integer solutions of A_1 x = 0, then a greedy choice of l = N - k1 of
/// them whose last l coordinates form a nonsingular block.
inline ComplementLattice complement_lattice(const IntMatrix& a1, std::size_t k1) {
  const std::size_t N = a1.cols();
  if (k1 > N) fail(ErrorKind::DimensionMismatch, "k1 exceeds the number of generators");
  const std::size_t ell = N - k1;
  ComplementLattice out;
  out.kernel = a1.rows() == 0 ? IntLattice::full(N) : integer_kernel(a1);
  std::vector<IntVector> chosen;
  std::vector<std::vector<Rational>> bottoms;
  for (std::size_t j = 0; j < out.kernel.rank() && chosen.size() < ell; ++j) {
    const IntVector x = out.kernel.basis_vector(j);
    std::vector<Rational> bottom(x.begin() + static_cast<long>(k1), x.end());
    auto trial = bottoms;
    trial.push_back(bottom);
    if (qav::rank(RatMatrix::from_rows(trial, ell)) == trial.size()) {
      bottoms = std::move(trial);
      chosen.push_back(x);
      out.selection.push_back(j);
    }
  }
  if (chosen.size() < ell) fail(ErrorKind::NoValidSelection, "integer solutions do not reach a nonsingular bottom block");
  out.bottom_minor = ell == 0 ? Integer(1) : determinant(RatMatrix::from_columns(bottoms, ell)).get_num();
  out.lambda = IntLattice::from_vectors(N, chosen);
  return out;
}

/// One splitting X_1 x X_2 -> X together with the proof's intermediate
/// objects. Lattices are in Gamma-coordinates.
struct DecompositionStep {
  Subspace v1, v2;
  IntLattice gamma1, gamma2, lambda;
  IntMatrix order;  // unimodular, Gamma_1 generators first
  std::size_t k1 = 0, n1 = 0, m1 = 0, ell = 0, rank_a1 = 0;
  IntMatrix a1;
  ComplementLattice complement;  // in reordered coordinates
  QuotientStructure quotient;    // Gamma / (Gamma_1 + Gamma_2)
  Integer isogeny_order = 1;
  // real dimensions of the auxiliary splittings
  std::size_t dim_e = 0, dim_f = 0, dim_e0 = 0, dim_w1_e = 0;
  bool x2_toroidal = false;
};

namespace detail {

inline Subspace complex_span_of_lattice(const IntLattice& l, const PeriodLattice& p) {
  std::vector<ComplexVector> images;
  for (std::size_t j = 0; j < l.rank(); ++j) images.push_back(p.image(l.basis_vector(j)));
  return Subspace::complex_span(p.n(), images);
}

inline Subspace real_span_of_lattice(const IntLattice& l, const PeriodLattice& p) {
  std::vector<RealVector> images;
  for (std::size_t j = 0; j < l.rank(); ++j) images.push_back(realify(p.image(l.basis_vector(j))));
  return Subspace::span(p.real_ambient(), images);
}

/// Checks that the lattice spans V, optionally that V/(V cap Gamma) is
/// toroidal, and that the form restricts amply to it.
inline void require_quasi_abelian_factor(const Subspace& v, const IntLattice& lattice, const PeriodLattice& p,
                                         const RiemannFormData& form, const char* label, bool require_toroidal) {
  const SubPeriodLattice sub = sub_period_lattice(v, lattice, p);
  if (!sub.spans() || !sub.periods) fail(ErrorKind::NotClosedSubvariety, std::string(label) + ": lattice does not span the subspace");
  if (require_toroidal && !is_toroidal(*sub.periods).toroidal)
    fail(ErrorKind::NotClosedSubvariety, std::string(label) + ": induced group is not toroidal");
  try {
    check_ample({restrict_form(form.h, sub.frame), form.witness, form.bounds}, *sub.periods);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InternalInconsistency) throw;
    fail(ErrorKind::FormNotAmpleOnFactor, std::string(label) + ": " + e.what());
  }
}

}  // namespace detail

/// Complementary closed subvariety X_2 = V_2/(V_2 cap Gamma) of X_1 = V_1/(V_1 cap Gamma).
inline DecompositionStep build_complement(const PeriodLattice& p, const Subspace& v1, const RiemannFormData& form) {
  const std::size_t n = p.n(), N = p.rank();
  if (v1.ambient() != p.real_ambient()) fail(ErrorKind::DimensionMismatch, "V1 ambient differs from 2n");
  if (v1.dim() == 0 || v1.dim() == v1.ambient()) fail(ErrorKind::InvalidArgument, "V1 must be a proper nonzero subspace");
  if (!v1.is_j_invariant()) fail(ErrorKind::NotJInvariant, "V1 is not a complex subspace");
  if (!closure_of(v1, p).is_closed) fail(ErrorKind::NotClosedSubvariety, "V1 + Gamma is not closed");
  const AmpleCertificate ample = check_ample(form, p);

  DecompositionStep s;
  s.v1 = v1;
  s.gamma1 = subgroup_lattice(v1, p);
  detail::require_quasi_abelian_factor(v1, s.gamma1, p, form, "X1", true);
  s.k1 = s.gamma1.rank();
  s.n1 = v1.dim() / 2;
  if (s.k1 < s.n1) fail(ErrorKind::InternalInconsistency, "Gamma_1 has rank below dim V1");
  s.m1 = s.k1 - s.n1;
  s.ell = N - s.k1;

  s.order = unimodular_completion(s.gamma1);
  s.a1 = build_A1(ample.pairing, s.order, s.k1);
  s.rank_a1 = qav::rank(to_rat_matrix(s.a1));
  if (s.rank_a1 % 2 != 0 || s.rank_a1 < 2 * s.m1 || s.rank_a1 > s.k1)
    fail(ErrorKind::InternalInconsistency, "rank A1 = " + std::to_string(s.rank_a1) + " is not of the form 2(m1 + k) with 2k <= n1 - m1");

  s.complement = complement_lattice(s.a1, s.k1);
  s.lambda = s.complement.lambda.image(s.order);

  s.v2 = detail::complex_span_of_lattice(s.lambda, p);
  if (s.v2.dim() != 2 * (n - s.n1))
    fail(ErrorKind::InternalInconsistency, "complex span of R_Lambda has dimension " + std::to_string(s.v2.dim() / 2) +
                                               ", expected " + std::to_string(n - s.n1));
  if ((v1 + s.v2).dim() != p.real_ambient()) fail(ErrorKind::InternalInconsistency, "V1 + V2 is not all of V");

  s.gamma2 = subgroup_lattice(s.v2, p);
  if (s.gamma2.rank() != s.ell) fail(ErrorKind::InternalInconsistency, "rank Gamma_2 differs from rank Lambda");
  if (!s.gamma2.contains(s.lambda)) fail(ErrorKind::InternalInconsistency, "Lambda is not contained in Gamma_2");
  if (!(detail::real_span_of_lattice(s.lambda, p) == detail::real_span_of_lattice(s.gamma2, p)))
    fail(ErrorKind::InternalInconsistency, "R_Lambda differs from R_Gamma_2");

  s.quotient = quotient(IntLattice::full(N), s.gamma1 + s.gamma2);
  if (!s.quotient.is_finite()) fail(ErrorKind::InternalInconsistency, "Gamma / (Gamma_1 + Gamma_2) is infinite");
  s.isogeny_order = s.quotient.torsion_order();

  if (!closure_of(s.v2, p).is_closed) fail(ErrorKind::InternalInconsistency, "V2 + Gamma is not closed");
  detail::require_quasi_abelian_factor(s.v2, s.gamma2, p, form, "X2", false);
  const SubPeriodLattice sub2 = sub_period_lattice(s.v2, s.gamma2, p);
  s.x2_toroidal = sub2.periods && is_toroidal(*sub2.periods).toroidal;

  // Auxiliary splittings: Cm = Cm_1 + E, W = (W_1 cap W) + F, E = E_0 + (W_1 cap E) + J(W_1 cap E).
  const Subspace rg = real_span(p);
  const Subspace cm = max_complex_subspace(rg);
  const Subspace w = greedy_complement(cm, rg);
  const Subspace rg1 = detail::real_span_of_lattice(s.gamma1, p);
  const Subspace cm1 = max_complex_subspace(rg1);
  const Subspace w1 = greedy_complement(cm1, rg1);
  const Subspace e = greedy_complement(cm1, cm);
  const Subspace w1e = intersect(w1, e);
  const Subspace w1w = intersect(w1, w);
  const Subspace f = greedy_complement(w1w, w);
  const Subspace e0 = greedy_complement(w1e + w1e.apply_j(), e);
  s.dim_e = e.dim();
  s.dim_f = f.dim();
  s.dim_e0 = e0.dim();
  s.dim_w1_e = w1e.dim();
  return s;
}

}  // namespace qav
