#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qav/riemann/decompose.hpp"
#include "qav/riemann/endo.hpp"

namespace qav::report {

using Json = nlohmann::ordered_json;

inline Json integer(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline Json scalar(const Scalar& x, const SymbolTable& t) { return to_string(x, t); }

inline Json cvector(const ComplexVector& v, const SymbolTable& t) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar(x, t));
  return out;
}

inline Json cmatrix(const ComplexMatrix& m, const SymbolTable& t) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(cvector(m.row_vector(r), t));
  return out;
}

inline Json ivector(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

inline Json imatrix(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(ivector(m.row_vector(r)));
  return out;
}

inline Json rvector(const std::vector<RatFunc>& v, const SymbolTable& t) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x, t));
  return out;
}

/// Basis vectors as a list (columns of the HNF basis).
inline Json lattice(const IntLattice& l) {
  Json basis = Json::array();
  for (std::size_t j = 0; j < l.rank(); ++j) basis.push_back(ivector(l.basis_vector(j)));
  return Json{{"rank", l.rank()}, {"basis", basis}};
}

inline Json subspace(const Subspace& s, const SymbolTable& t) {
  Json basis = Json::array();
  for (const auto& v : s.basis_vectors()) basis.push_back(rvector(v, t));
  Json out{{"real_dim", s.dim()}, {"j_invariant", s.is_j_invariant()}, {"basis", basis}};
  if (s.is_j_invariant()) {
    Json cb = Json::array();
    for (const auto& v : complex_basis(s)) cb.push_back(cvector(v, t));
    out["complex_dim"] = s.dim() / 2;
    out["complex_basis"] = cb;
  }
  return out;
}

inline Json quotient(const QuotientStructure& q) {
  Json d = Json::array();
  for (const auto& x : q.elementary_divisors) d.push_back(integer(x));
  return Json{{"elementary_divisors", d}, {"free_rank", q.free_rank}, {"finite", q.is_finite()},
              {"order", q.is_finite() ? integer(q.torsion_order()) : Json(nullptr)}};
}

inline Json closure(const ClosureResult& c, const SymbolTable& t) {
  return Json{{"is_closed", c.is_closed},
              {"subspace_part", subspace(c.subspace_part, t)},
              {"characters", lattice(c.characters)},
              {"lattice_in_closure", lattice(c.lattice_in_closure)},
              {"discrete_part", lattice(c.discrete_part)}};
}

inline Json toroidal(const ToroidalCertificate& c, const SymbolTable& t) {
  Json out{{"verdict", c.toroidal}, {"discrete", c.discrete}, {"complex_span_full", c.complex_span_full}};
  if (c.sigma) {
    out["character"] = Json{{"sigma", ivector(*c.sigma)},
                            {"functional", cvector(*c.functional, t)},
                            {"character_lattice", lattice(c.character_lattice)}};
  } else {
    out["character"] = nullptr;
  }
  return out;
}

inline Json candidate(const SubtorusCandidate& c, const SymbolTable& t) {
  return Json{{"complex_dim", c.complex_dim},
              {"origin", c.origin},
              {"subspace", subspace(c.space, t)},
              {"lattice", lattice(c.lattice)},
              {"rank", c.rank},
              {"toroidal", c.toroidal},
              {"closed", c.closure.is_closed},
              {"subtorus", c.is_subtorus},
              {"closure", closure(c.closure, t)}};
}

inline Json candidates(const std::vector<SubtorusCandidate>& cs, const SymbolTable& t) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(candidate(c, t));
  return out;
}

inline Json certificate(const SimplicityCertificate& c, const SymbolTable& t) {
  Json nonclosed = Json::array();
  for (const auto* y : c.nonclosed_toroidal()) nonclosed.push_back(candidate(*y, t));
  Json dims = Json::array();
  for (auto d : c.dimension_range) dims.push_back(d);
  return Json{{"verdict", c.verdict()},
              {"height", c.height_bound},
              {"dimension_range", dims},
              {"counterexample", c.counterexample ? candidate(*c.counterexample, t) : Json(nullptr)},
              {"witness_subgroup_nonclosed", nonclosed},
              {"candidates", candidates(c.candidates, t)},
              {"complete", false},
              {"scope", "only subgroups spanned by lattice vectors of height <= " + std::to_string(c.height_bound) + " are examined"}};
}

inline Json ample(const AmpleCertificate& a, const SymbolTable& t) {
  Json minors = Json::array();
  for (std::size_t k = 0; k < a.minors.size(); ++k)
    minors.push_back(Json{{"minor", scalar(a.minors[k], t)},
                          {"value_at_witness", a.minor_values[k].get_str()},
                          {"sign_certified_on_interval", static_cast<bool>(a.interval_certified[k])}});
  Json frame = Json::array();
  for (const auto& v : a.cm_frame) frame.push_back(cvector(v, t));
  return Json{{"pairing", imatrix(a.pairing)}, {"cm_frame", frame}, {"restricted_form", cmatrix(a.restricted, t)}, {"leading_minors", minors}};
}

inline Json step(const DecompositionStep& s, const SymbolTable& t) {
  Json sel = Json::array();
  for (auto j : s.complement.selection) sel.push_back(j);
  return Json{{"v1", subspace(s.v1, t)},
              {"gamma1", lattice(s.gamma1)},
              {"k1", s.k1},
              {"n1", s.n1},
              {"m1", s.m1},
              {"generator_order", imatrix(s.order)},
              {"a1", imatrix(s.a1)},
              {"rank_a1", s.rank_a1},
              {"solutions", lattice(s.complement.kernel)},
              {"selection", sel},
              {"bottom_minor", integer(s.complement.bottom_minor)},
              {"lambda", lattice(s.lambda)},
              {"ell", s.ell},
              {"v2", subspace(s.v2, t)},
              {"gamma2", lattice(s.gamma2)},
              {"quotient", quotient(s.quotient)},
              {"isogeny_order", integer(s.isogeny_order)},
              {"x2_toroidal", s.x2_toroidal},
              {"splitting_real_dims", Json{{"E", s.dim_e}, {"F", s.dim_f}, {"E0", s.dim_e0}, {"W1_cap_E", s.dim_w1_e}}},
              {"checked",
               Json::array({"rank A1 = 2(m1 + k)", "bottom minor nonzero", "V1 + V2 = V", "rank Gamma_2 = rank Lambda",
                            "R_Lambda = R_Gamma_2", "Gamma / (Gamma_1 + Gamma_2) finite", "X2 closed",
                            "form ample on X1 and X2"})}};
}

inline Json decomposition(const Decomposition& d, const SymbolTable& t) {
  Json factors = Json::array(), certs = Json::array(), steps = Json::array();
  for (const auto& f : d.factors) {
    Json cert = f.certificate ? certificate(*f.certificate, t) : Json(nullptr);
    factors.push_back(Json{{"dim", f.dim()},
                           {"rank", f.periods.rank()},
                           {"lattice", lattice(f.lattice())},
                           {"periods", cmatrix(f.periods.periods(), t)},
                           {"frame", cmatrix(f.frame, t)},
                           {"form", cmatrix(f.form, t)},
                           {"toroidal", f.toroidal},
                           {"simplicity", f.toroidal ? Json("certified only up to height " + std::to_string(d.height_bound))
                                                     : Json("not toroidal; no simplicity certificate")}});
    certs.push_back(Json{{"factor", factors.size() - 1}, {"certificate", cert}});
  }
  for (const auto& s : d.steps)
    steps.push_back(Json{{"depth", s.depth},
                         {"parent_lattice", s.parent_key},
                         {"gamma1", lattice(s.gamma1)},
                         {"gamma2", lattice(s.gamma2)},
                         {"lambda", lattice(s.lambda)},
                         {"isogeny_order", integer(s.step.isogeny_order)},
                         {"local", step(s.step, t)}});
  return Json{{"factors", factors}, {"steps", steps}, {"total_order", integer(d.total_order)}, {"certificates", certs}};
}

inline Json injectivity(const InjectivityReport& r, const SymbolTable& t) {
  Json kernel = Json::array();
  for (const auto& v : r.kernel) kernel.push_back(cvector(v, t));
  return Json{{"injective", r.injective},
              {"rational_rep", imatrix(r.rational_rep)},
              {"kernel", kernel},
              {"kernel_lattice", lattice(r.kernel_lattice)},
              {"image_lattice", lattice(r.image_lattice)},
              {"image_space", subspace(r.image_space, t)},
              {"sum_rank", r.sum_rank},
              {"intersection_trivial", r.intersection_trivial},
              {"image_subgroup", r.image_subgroup ? candidate(*r.image_subgroup, t) : Json(nullptr)},
              {"kernel_subgroup", r.kernel_subgroup ? candidate(*r.kernel_subgroup, t) : Json(nullptr)}};
}

}  // namespace qav::report
