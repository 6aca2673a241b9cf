#pragma once

#include <vector>

#include "qav/torgroup/period_lattice.hpp"

namespace qav {

/// Closure of E + Gamma: the identity component `subspace_part` plus the
/// discrete remainder of Gamma.
struct ClosureResult {
  Subspace subspace_part;
  IntLattice characters;          // integer sigma induced by functionals vanishing on E
  IntLattice lattice_in_closure;  // Gamma cap subspace_part, Gamma-coordinates
  IntLattice discrete_part;       // complement of lattice_in_closure in Z^{n+m}
  bool is_closed = false;
};

/// Dual computation: integer characters sigma of Gamma that factor
/// through V / E cut out the closure, whose identity component is
/// E + { G y : sigma . y = 0 for all sigma }.
inline ClosureResult closure_of(const Subspace& e, const PeriodLattice& p) {
  if (e.ambient() != p.real_ambient()) fail(ErrorKind::DimensionMismatch, "subspace ambient differs from 2n");
  const std::size_t N = p.rank();
  ClosureResult out;
  // Y = {y : G y in E}; sigma ranges over integer vectors orthogonal to Y.
  const RealMatrix projected = e.annihilator() * p.realified();
  const auto y = kernel_basis(projected);
  out.characters = integer_kernel(rational_conditions(to_scalar(RealMatrix::from_rows(y, N))));
  std::vector<std::vector<Rational>> free_dirs;
  if (out.characters.is_zero()) {
    for (std::size_t j = 0; j < N; ++j) {
      std::vector<Rational> v(N, Rational(0));
      v[j] = 1;
      free_dirs.push_back(std::move(v));
    }
  } else {
    free_dirs = kernel_basis(to_rat_matrix(out.characters.basis().transpose()));
  }
  std::vector<RealVector> spanning = e.basis_vectors();
  for (const auto& d : free_dirs) {
    RealVector v(p.real_ambient(), RatFunc(0));
    for (std::size_t j = 0; j < N; ++j) {
      if (is_zero(d[j])) continue;
      const RatFunc c(d[j]);
      for (std::size_t r = 0; r < v.size(); ++r)
        if (!p.realified()(r, j).is_zero()) v[r] += c * p.realified()(r, j);
    }
    spanning.push_back(std::move(v));
  }
  out.subspace_part = Subspace::span(p.real_ambient(), spanning);
  out.is_closed = out.subspace_part.dim() == e.dim();
  out.lattice_in_closure = subgroup_lattice(out.subspace_part, p);
  const IntMatrix completion = unimodular_completion(out.lattice_in_closure);
  const std::size_t k = out.lattice_in_closure.rank();
  out.discrete_part = IntLattice::from_generators(completion.columns(k, N - k));
  return out;
}

}  // namespace qav
