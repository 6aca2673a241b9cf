#pragma once

#include <optional>
#include <vector>

#include "qav/torgroup/period_lattice.hpp"

namespace qav {

/// Outcome of the character criterion. When `toroidal` is false,
/// `sigma` is a nonzero integer vector in the K-row space of P, so
/// z -> exp(2 pi i u.z) with u P = sigma is a nonconstant holomorphic
/// function on the quotient.
struct ToroidalCertificate {
  bool toroidal = false;
  std::optional<IntVector> sigma;
  std::optional<ComplexVector> functional;  // u with u P = sigma
  IntLattice character_lattice;             // all such sigma
  std::vector<ComplexVector> kernel;        // right kernel of P over K
  RatMatrix conditions;                     // rational form of sigma . kernel = 0
  bool complex_span_full = true;
  bool discrete = true;
};

inline ToroidalCertificate is_toroidal(const PeriodLattice& p) {
  ToroidalCertificate cert;
  cert.kernel = kernel_basis(p.periods());
  cert.complex_span_full = complex_rank(p) == p.n();
  const ComplexMatrix rows = ComplexMatrix::from_rows(cert.kernel, p.rank());
  cert.conditions = rational_conditions(rows);
  cert.character_lattice = integer_kernel(cert.conditions);
  cert.discrete = p.is_discrete();
  cert.toroidal = cert.discrete && cert.character_lattice.is_zero();
  if (!cert.character_lattice.is_zero()) {
    cert.sigma = cert.character_lattice.basis_vector(0);
    ComplexVector target;
    for (const auto& x : *cert.sigma) target.emplace_back(Rational(x));
    auto u = solve(p.periods().transpose(), target);
    if (!u) fail(ErrorKind::InternalInconsistency, "character outside the row space of the period matrix");
    cert.functional = std::move(*u);
  }
  return cert;
}

}  // namespace qav
