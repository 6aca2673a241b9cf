#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qav/riemann/complement.hpp"
#include "qav/subvariety/subtori.hpp"

namespace qav {

/// A factor V/(V cap Gamma) in its own coordinates, with its position in
/// the original group.
struct Factor {
  PeriodLattice periods;
  ComplexMatrix form;
  IntMatrix embedding;  // factor Gamma-coordinates -> original Gamma-coordinates
  ComplexMatrix frame;  // factor C^k -> original C^n
  bool toroidal = false;
  std::optional<SimplicityCertificate> certificate;
  std::string key;

  std::size_t dim() const { return periods.n(); }
  IntLattice lattice() const { return IntLattice::from_generators(embedding); }
};

/// A splitting step with its lattices also expressed in original coordinates.
struct StepRecord {
  std::size_t depth = 0;
  std::string parent_key;
  DecompositionStep step;
  IntLattice gamma1, gamma2, lambda;  // original Gamma-coordinates
};

struct Decomposition {
  std::vector<Factor> factors;
  std::vector<StepRecord> steps;
  Integer total_order = 1;
  long height_bound = 0;
};

namespace detail {

inline Factor make_factor(const PeriodLattice& periods, ComplexMatrix form, IntMatrix embedding, ComplexMatrix frame) {
  Factor f{periods, std::move(form), std::move(embedding), std::move(frame), false, std::nullopt, {}};
  f.key = f.lattice().key();
  return f;
}

inline Factor child_factor(const Factor& parent, const Subspace& v, const IntLattice& lattice) {
  const SubPeriodLattice sub = sub_period_lattice(v, lattice, parent.periods);
  if (!sub.spans() || !sub.periods) fail(ErrorKind::InternalInconsistency, "factor lattice does not span its subspace");
  const ComplexMatrix local = ComplexMatrix::from_columns(sub.frame, parent.dim());
  return make_factor(*sub.periods, restrict_form(parent.form, sub.frame), parent.embedding * lattice.basis(),
                     parent.frame * local);
}

/// First closed toroidal candidate on which the form is ample.
inline std::optional<SubtorusCandidate> split_candidate(const Factor& f, const RiemannFormData& form, long height) {
  for (std::size_t d = 1; d < f.dim(); ++d)
    for (const auto& c : find_subtori(f.periods, d, height)) {
      if (!c.toroidal || !c.closure.is_closed) continue;
      const SubPeriodLattice sub = sub_period_lattice(c.space, c.lattice, f.periods);
      try {
        check_ample({restrict_form(f.form, sub.frame), form.witness, form.bounds}, *sub.periods);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InternalInconsistency) throw;
        continue;
      }
      return c;
    }
  return std::nullopt;
}

inline void decompose_into(const Factor& f, const RiemannFormData& form, long height, std::size_t depth, Decomposition& out) {
  const auto candidate = split_candidate(f, form, height);
  if (!candidate) {
    Factor leaf = f;
    leaf.toroidal = is_toroidal(f.periods).toroidal;
    if (leaf.toroidal) leaf.certificate = geometric_simplicity_certificate(f.periods, height);
    out.factors.push_back(std::move(leaf));
    return;
  }
  const RiemannFormData local{f.form, form.witness, form.bounds};
  StepRecord rec;
  rec.depth = depth;
  rec.parent_key = f.key;
  rec.step = build_complement(f.periods, candidate->space, local);
  rec.gamma1 = rec.step.gamma1.image(f.embedding);
  rec.gamma2 = rec.step.gamma2.image(f.embedding);
  rec.lambda = rec.step.lambda.image(f.embedding);
  out.total_order *= rec.step.isogeny_order;
  const Factor x1 = child_factor(f, rec.step.v1, rec.step.gamma1);
  const Factor x2 = child_factor(f, rec.step.v2, rec.step.gamma2);
  out.steps.push_back(std::move(rec));
  decompose_into(x1, form, height, depth + 1, out);
  decompose_into(x2, form, height, depth + 1, out);
}

}  // namespace detail

/// Recursive splitting into factors without closed toroidal subgroups
/// found up to the height bound.
inline Decomposition decompose(const PeriodLattice& p, const RiemannFormData& form, long height) {
  check_ample(form, p);
  Decomposition out;
  out.height_bound = height;
  const Factor root = detail::make_factor(p, form.h, IntMatrix::identity(p.rank()),
                                          ComplexMatrix::identity(p.n()));
  detail::decompose_into(root, form, height, 0, out);
  std::stable_sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.key < b.key;
  });
  return out;
}

}  // namespace qav
