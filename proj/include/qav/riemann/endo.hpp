#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qav/subvariety/subtori.hpp"

namespace qav {

inline ComplexMatrix to_complex(const IntMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!is_zero(m(r, c))) out(r, c) = Scalar(Rational(m(r, c)));
  return out;
}

namespace detail {

/// Columns S of P with P_S invertible.
inline std::vector<std::size_t> invertible_block(const PeriodLattice& p) {
  auto cols = independent_columns(p.periods());
  if (cols.size() != p.n()) fail(ErrorKind::DegenerateSpan, "period matrix does not span C^n");
  return cols;
}

}  // namespace detail

/// Phi with Phi P = P C, when it exists.
inline ComplexMatrix endo_from_rational(const IntMatrix& c, const PeriodLattice& p) {
  const std::size_t N = p.rank();
  if (c.rows() != N || c.cols() != N) fail(ErrorKind::DimensionMismatch, "rational representation must be (n+m) x (n+m)");
  const auto cols = detail::invertible_block(p);
  const ComplexMatrix pc = p.periods() * to_complex(c);
  const auto ps_inv = inverse(p.periods().select_columns(cols));
  if (!ps_inv) fail(ErrorKind::InternalInconsistency, "independent columns form a singular block");
  const ComplexMatrix phi = pc.select_columns(cols) * *ps_inv;
  const ComplexMatrix lhs = phi * p.periods();
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t r = 0; r < p.n(); ++r)
      if (lhs(r, j) != pc(r, j))
        fail(ErrorKind::AnalyticInconsistent, "column " + std::to_string(j + 1) + ", row " + std::to_string(r + 1) +
                                                  ": Phi gamma differs from the image prescribed by C");
  return phi;
}

/// Integer matrices C (flattened row-major) admitting Phi with Phi P = P C.
inline IntLattice endomorphism_lattice(const PeriodLattice& p) {
  const std::size_t n = p.n(), N = p.rank();
  const auto cols = detail::invertible_block(p);
  const auto ps_inv = inverse(p.periods().select_columns(cols));
  if (!ps_inv) fail(ErrorKind::InternalInconsistency, "independent columns form a singular block");
  const ComplexMatrix q = *ps_inv * p.periods();
  std::vector<long> slot(N, -1);
  for (std::size_t k = 0; k < cols.size(); ++k) slot[cols[k]] = static_cast<long>(k);
  // Condition (r, j): sum_i P_ri (sum_{s in S} C_is Q_sj - C_ij) = 0.
  ComplexMatrix cond(n * N, N * N);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < N; ++i) {
        const Scalar& pri = p.periods()(r, i);
        if (pri.is_zero()) continue;
        for (std::size_t t = 0; t < N; ++t) {
          Scalar coeff = slot[t] >= 0 ? pri * q(static_cast<std::size_t>(slot[t]), j) : Scalar(0);
          if (t == j) coeff -= pri;
          if (!coeff.is_zero()) cond(r * N + j, i * N + t) += coeff;
        }
      }
  return integer_kernel(rational_conditions(cond));
}

inline IntMatrix unflatten(const IntVector& v, std::size_t N) {
  IntMatrix c(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) c(i, j) = v[i * N + j];
  return c;
}

/// Nonzero rational representations of endomorphisms with entries in [-bound, bound].
inline std::vector<IntMatrix> small_endomorphisms(const PeriodLattice& p, long bound) {
  const std::size_t N = p.rank();
  std::vector<IntMatrix> out;
  enumerate_box(endomorphism_lattice(p), Integer(bound), [&](const IntVector& v) { out.push_back(unflatten(v, N)); });
  return out;
}

struct InjectivityReport {
  bool injective = false;
  IntMatrix rational_rep;
  std::vector<ComplexVector> kernel;   // basis of K over the scalar field
  IntLattice kernel_lattice;           // K cap Gamma
  IntLattice image_lattice;            // Phi(Gamma)
  Subspace image_space;                // W = Phi(C^n)
  std::size_t sum_rank = 0;            // rank(K cap Gamma + Phi(Gamma))
  bool intersection_trivial = true;    // (K cap Gamma) cap Phi(Gamma) = 0
  std::optional<SubtorusCandidate> image_subgroup;   // W / (W cap Gamma)
  std::optional<SubtorusCandidate> kernel_subgroup;  // K / (K cap Gamma)
};

inline InjectivityReport endo_injectivity(const ComplexMatrix& phi, const PeriodLattice& p) {
  const auto hom = verify_homomorphism(phi, p, p);
  if (!hom.ok)
    fail(ErrorKind::NotEndomorphism, "generator " + std::to_string(*hom.failing_generator + 1) + " is not mapped into the lattice");
  InjectivityReport r;
  r.rational_rep = hom.rational_rep;
  r.kernel = kernel_basis(phi);
  r.injective = r.kernel.empty();
  const std::size_t n = p.n();
  r.image_lattice = IntLattice::from_generators(hom.rational_rep);
  std::vector<ComplexVector> cols;
  for (std::size_t c = 0; c < phi.cols(); ++c) cols.push_back(phi.column(c));
  r.image_space = Subspace::complex_span(n, cols);
  const Subspace kspace = Subspace::complex_span(n, r.kernel);
  r.kernel_lattice = subgroup_lattice(kspace, p);
  r.sum_rank = (r.kernel_lattice + r.image_lattice).rank();
  r.intersection_trivial = intersect(r.kernel_lattice, r.image_lattice).is_zero();
  if (!r.injective && r.image_space.dim() > 0) {
    r.image_subgroup = analyse_candidate(r.image_space, p, "endomorphism-image");
    r.kernel_subgroup = analyse_candidate(kspace, p, "endomorphism-kernel");
  }
  return r;
}

struct EndqInverse {
  IntMatrix numerator;
  Integer denominator = 1;
};

/// C^{-1} = numerator / denominator with the smallest positive denominator.
inline EndqInverse endq_inverse(const IntMatrix& c, const PeriodLattice& p) {
  if (c.rows() != p.rank() || c.cols() != p.rank()) fail(ErrorKind::DimensionMismatch, "rational representation must be (n+m) x (n+m)");
  const auto inv = inverse(to_rat_matrix(c));
  if (!inv) fail(ErrorKind::NotInvertible, "det C = 0");
  EndqInverse out;
  for (std::size_t i = 0; i < inv->rows(); ++i)
    for (std::size_t j = 0; j < inv->cols(); ++j) out.denominator = lcm(out.denominator, (*inv)(i, j).get_den());
  out.numerator = IntMatrix(c.rows(), c.cols());
  for (std::size_t i = 0; i < inv->rows(); ++i)
    for (std::size_t j = 0; j < inv->cols(); ++j)
      out.numerator(i, j) = (*inv)(i, j).get_num() * (out.denominator / (*inv)(i, j).get_den());
  return out;
}

}  // namespace qav
