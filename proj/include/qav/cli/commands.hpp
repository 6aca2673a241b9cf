#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qav/cli/document.hpp"
#include "qav/cli/report.hpp"

namespace qav::cli {

using report::Json;

struct Options {
  std::optional<std::string> matrix, form, witness, bounds, subspace, vector, intmatrix, compare;
  std::optional<long> height;
  std::optional<std::size_t> dim;
};

struct Outcome {
  Json report;
  int exit_code = 0;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"toroidal", "max-cx", "closure", "subgroup", "line-intersect", "subtori",
                                                 "simple-cert", "decompose", "endo", "isogeny-order"};
  return names;
}

inline int exit_code_for(ErrorKind k) { return is_inconsistency(k) ? 2 : 1; }

inline Json error_payload(const Error& e) {
  Json out{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    out["line"] = pe->line();
    out["column"] = pe->column();
    Json expected = Json::array();
    for (const auto& t : pe->expected()) expected.push_back(t);
    out["expected"] = expected;
  }
  return out;
}

namespace detail {

struct Context {
  const Document& doc;
  const Options& opt;
  const NamedMatrix& named;
  PeriodLattice p;
  Json assumptions;
};

inline long height_or(const Options& o, long fallback) {
  const long h = o.height.value_or(fallback);
  if (h < 1) fail(ErrorKind::InvalidArgument, "--height must be positive");
  return h;
}

inline Json base_assumptions(const Document& doc) {
  Json syms = Json::array();
  for (const auto& s : doc.symbols->names()) syms.push_back(s);
  return Json{{"symbols", syms},
              {"symbol_model", doc.symbols->size() == 0
                                   ? "no symbols; all entries are Gaussian rationals"
                                   : "symbols are real and algebraically independent over Q; results hold for every such assignment"}};
}

inline ComplexVector ambient_vector(const VectorsDef& v, const ComplexVector& row, const PeriodLattice& p) {
  if (v.coords == Coordinates::Ambient) return row;
  ComplexVector out(p.n(), Scalar(0));
  for (std::size_t j = 0; j < row.size(); ++j)
    for (std::size_t r = 0; r < p.n(); ++r) out[r] += row[j] * p.periods()(r, j);
  return out;
}

inline const VectorsDef& checked_vectors(const VectorsDef& v, const NamedMatrix& m, const char* what) {
  if (v.matrix != m.name) fail(ErrorKind::InvalidArgument, std::string(what) + " '" + v.name + "' refers to matrix '" + v.matrix + "', not '" + m.name + "'");
  return v;
}

inline Subspace subspace_from(const Context& c) {
  const VectorsDef& v = checked_vectors(find_subspace(c.doc, c.opt.subspace), c.named, "subspace");
  std::vector<ComplexVector> vs;
  for (const auto& row : v.rows) vs.push_back(ambient_vector(v, row, c.p));
  return Subspace::complex_span(c.p.n(), vs);
}

inline RiemannFormData form_from(Context& c) {
  RiemannFormData f{find_form(c.doc, c.opt.form).value, std::nullopt, std::nullopt};
  if (!c.doc.witnesses.empty() || c.opt.witness) {
    const WitnessDef& w = find_witness(c.doc, c.opt.witness);
    f.witness = witness_point(w, *c.doc.symbols);
    Json wj = Json::object();
    for (const auto& [s, v] : w.values) wj[s] = v.get_str();
    c.assumptions["witness"] = Json{{"name", w.name}, {"point", wj}};
  }
  if (!c.doc.bounds.empty() || c.opt.bounds) {
    const BoundsDef& b = find_bounds(c.doc, c.opt.bounds);
    f.bounds = {{b.lo, b.hi}};
    c.assumptions["bounds"] = Json{{"symbol", b.symbol}, {"interval", Json::array({b.lo.get_str(), b.hi.get_str()})}};
  }
  c.assumptions["form"] = find_form(c.doc, c.opt.form).name;
  c.assumptions["positivity"] = "leading minors on Cm are checked at the witness; sign constancy is certified by Sturm sequences only for single-symbol minors when bounds are declared";
  return f;
}

inline Json run_toroidal(Context& c) {
  return report::toroidal(is_toroidal(c.p), c.p.symbols());
}

inline Json run_max_cx(Context& c) {
  const SymbolTable& t = c.p.symbols();
  const Subspace rg = real_span(c.p);
  const Subspace cm = max_complex_subspace(rg);
  const Subspace w = greedy_complement(cm, rg);
  const IntLattice l = subgroup_lattice(cm, c.p);
  const SubPeriodLattice sub = sub_period_lattice(cm, l, c.p);
  Json out{{"real_span", report::subspace(rg, t)},
           {"cm", report::subspace(cm, t)},
           {"m", cm.dim() / 2},
           {"w_real_dim", w.dim()},
           {"lattice", report::lattice(l)},
           {"lattice_spans_cm", sub.spans()}};
  if (!sub.periods) {
    out["periods"] = nullptr;
    return out;
  }
  out["frame"] = Json::array();
  for (const auto& v : sub.frame) out["frame"].push_back(report::cvector(v, t));
  out["periods"] = report::cmatrix(sub.periods->periods(), t);
  out["toroidal"] = is_toroidal(*sub.periods).toroidal;
  const ComplexMatrix phi = ComplexMatrix::from_columns(sub.frame, c.p.n());
  const HomomorphismCheck inc = verify_homomorphism(phi, *sub.periods, c.p);
  out["inclusion"] = Json{{"ok", inc.ok}, {"nonzero", !inc.rational_rep.is_zero_matrix()}, {"rational_rep", report::imatrix(inc.rational_rep)}};
  if (c.opt.compare) {
    const NamedMatrix& ref = find_matrix(c.doc, c.opt.compare);
    bool equivalent = false;
    Json transform = nullptr;
    if (ref.value.rows() == sub.periods->n() && ref.value.cols() == sub.periods->rank()) {
      const PeriodLattice rp(c.p.table(), ref.value);
      const ComplexMatrix id = ComplexMatrix::identity(rp.n());
      const HomomorphismCheck there = verify_homomorphism(id, *sub.periods, rp);
      const HomomorphismCheck back = verify_homomorphism(id, rp, *sub.periods);
      equivalent = there.ok && back.ok;
      if (equivalent) transform = report::imatrix(there.rational_rep);
    }
    out["compare"] = Json{{"matrix", ref.name}, {"column_equivalent", equivalent}, {"transform", transform}};
  }
  return out;
}

inline Json run_closure(Context& c) {
  const SymbolTable& t = c.p.symbols();
  const Subspace e = c.opt.subspace || !c.doc.subspaces.empty() ? subspace_from(c) : max_complex_subspace(real_span(c.p));
  const ClosureResult cl = closure_of(e, c.p);
  const Subspace rg = real_span(c.p);
  return Json{{"subspace", report::subspace(e, t)},
              {"closure", report::closure(cl, t)},
              {"equals_real_span", cl.subspace_part == rg},
              {"real_span_dim", rg.dim()}};
}

inline Json run_subgroup(Context& c) {
  const SymbolTable& t = c.p.symbols();
  const Subspace e = subspace_from(c);
  const IntLattice l = subgroup_lattice(e, c.p);
  const SubPeriodLattice sub = sub_period_lattice(e, l, c.p);
  Json out{{"subspace", report::subspace(e, t)}, {"lattice", report::lattice(l)}, {"spans", sub.spans()}};
  out["periods"] = sub.periods ? report::cmatrix(sub.periods->periods(), t) : Json(nullptr);
  out["toroidal"] = sub.periods && sub.spans() ? Json(is_toroidal(*sub.periods).toroidal) : Json(nullptr);
  return out;
}

struct SweepAcc {
  std::map<std::size_t, std::uint64_t> histogram;
  std::map<std::string, IntLattice> rich;
};

inline Json run_line_intersect(Context& c) {
  const SymbolTable& t = c.p.symbols();
  if (c.opt.vector || (!c.doc.vectors.empty() && !c.opt.height)) {
    const VectorsDef& v = checked_vectors(find_vector(c.doc, c.opt.vector), c.named, "vector");
    const LineIntersection li = line_lattice_intersection(ambient_vector(v, v.rows[0], c.p), c.p);
    return Json{{"line_generator", report::cvector(li.line_generator, t)}, {"lattice", report::lattice(li.lattice)}, {"rank", li.rank}};
  }
  const long h = height_or(c.opt, 3);
  c.assumptions["height_bound"] = h;
  const LineSearch search(c.p);
  const std::size_t N = c.p.rank();
  auto slots = qav::detail::parallel_indices<SweepAcc>(qav::detail::box_size(N, h), [&](std::uint64_t idx, SweepAcc& acc) {
    std::vector<long> a;
    if (!qav::detail::primitive_at(idx, N, h, a)) return;
    const IntLattice l = search.lattice_through(qav::detail::to_int_vector(a));
    ++acc.histogram[l.rank()];
    if (l.rank() >= 2) acc.rich.emplace(l.key(), l);
  });
  SweepAcc total;
  for (auto& s : slots) {
    for (const auto& [r, n] : s.histogram) total.histogram[r] += n;
    total.rich.merge(s.rich);
  }
  std::uint64_t lines = 0;
  Json hist = Json::object();
  for (const auto& [r, n] : total.histogram) {
    hist[std::to_string(r)] = n;
    lines += n;
  }
  Json rich = Json::array();
  for (const auto& [k, l] : total.rich) rich.push_back(report::lattice(l));
  return Json{{"height", h}, {"primitive_vectors", lines}, {"rank_histogram", hist},
              {"all_rank_one", total.histogram.size() == 1 && total.histogram.count(1)}, {"rich_lines", rich}};
}

inline Json run_subtori(Context& c) {
  const long h = height_or(c.opt, 3);
  c.assumptions["height_bound"] = h;
  std::vector<std::size_t> dims;
  if (c.opt.dim) {
    dims.push_back(*c.opt.dim);
  } else {
    for (std::size_t d = 1; d < c.p.n(); ++d) dims.push_back(d);
  }
  Json out = Json::array();
  Json dj = Json::array();
  for (auto d : dims) {
    dj.push_back(d);
    for (const auto& cand : report::candidates(find_subtori(c.p, d, h), c.p.symbols())) out.push_back(cand);
  }
  return Json{{"height", h}, {"dims", dj}, {"candidates", out}};
}

inline Json run_simple_cert(Context& c) {
  const long h = height_or(c.opt, 3);
  c.assumptions["height_bound"] = h;
  return report::certificate(geometric_simplicity_certificate(c.p, h), c.p.symbols());
}

inline Json run_decompose(Context& c) {
  const long h = height_or(c.opt, 2);
  c.assumptions["height_bound"] = h;
  c.assumptions["complement_rule"] = "complements are chosen greedily along canonical echelon bases";
  const RiemannFormData f = form_from(c);
  Json out{{"ample", report::ample(check_ample(f, c.p), c.p.symbols())}};
  out.update(report::decomposition(decompose(c.p, f, h), c.p.symbols()));
  return out;
}

inline Json endomorphism_entry(const IntMatrix& cm, const PeriodLattice& p) {
  const SymbolTable& t = p.symbols();
  const ComplexMatrix phi = endo_from_rational(cm, p);
  const InjectivityReport r = endo_injectivity(phi, p);
  Json out{{"phi", report::cmatrix(phi, t)}};
  out.update(report::injectivity(r, t));
  if (r.injective) {
    const EndqInverse inv = endq_inverse(cm, p);
    out["inverse"] = Json{{"numerator", report::imatrix(inv.numerator)}, {"denominator", report::integer(inv.denominator)}};
  } else {
    out["inverse"] = nullptr;
  }
  return out;
}

inline Json run_endo(Context& c) {
  if (c.opt.intmatrix || !c.doc.intmatrices.empty()) return endomorphism_entry(find_intmatrix(c.doc, c.opt.intmatrix).value, c.p);
  const long bound = height_or(c.opt, 1);
  c.assumptions["entry_bound"] = bound;
  const IntLattice lat = endomorphism_lattice(c.p);
  Json list = Json::array();
  for (const auto& cm : small_endomorphisms(c.p, bound)) list.push_back(endomorphism_entry(cm, c.p));
  return Json{{"entry_bound", bound}, {"endomorphism_lattice_rank", lat.rank()}, {"endomorphisms", list}};
}

inline Json run_isogeny_order(Context& c) {
  c.assumptions["complement_rule"] = "complements are chosen greedily along canonical echelon bases";
  const RiemannFormData f = form_from(c);
  const Subspace v1 = subspace_from(c);
  return report::step(build_complement(c.p, v1, f), c.p.symbols());
}

}  // namespace detail

/// Executes one command; errors become a JSON payload and exit code 1
/// (input) or 2 (failed proof obligation).
inline Outcome run(const std::string& command, const Document& doc, const Options& opt) {
  Outcome o;
  o.report = Json{{"command", command}};
  Json assumptions = detail::base_assumptions(doc);
  try {
    const NamedMatrix& named = find_matrix(doc, opt.matrix);
    o.report["matrix"] = named.name;
    detail::Context c{doc, opt, named, PeriodLattice(doc.symbols, named.value), assumptions};
    o.report["n"] = c.p.n();
    o.report["generators"] = c.p.rank();
    Json result;
    if (command == "toroidal") result = detail::run_toroidal(c);
    else if (command == "max-cx") result = detail::run_max_cx(c);
    else if (command == "closure") result = detail::run_closure(c);
    else if (command == "subgroup") result = detail::run_subgroup(c);
    else if (command == "line-intersect") result = detail::run_line_intersect(c);
    else if (command == "subtori") result = detail::run_subtori(c);
    else if (command == "simple-cert") result = detail::run_simple_cert(c);
    else if (command == "decompose") result = detail::run_decompose(c);
    else if (command == "endo") result = detail::run_endo(c);
    else if (command == "isogeny-order") result = detail::run_isogeny_order(c);
    else fail(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
    o.report.update(result);
    assumptions = c.assumptions;
  } catch (const Error& e) {
    o.report["error"] = error_payload(e);
    o.exit_code = exit_code_for(e.kind());
  }
  o.report["assumptions"] = assumptions;
  return o;
}

/// Parses and runs; syntax errors are reported like any other input error.
inline Outcome run_text(const std::string& command, std::string_view text, const Options& opt) {
  try {
    return run(command, parse_document(text), opt);
  } catch (const Error& e) {
    Outcome o;
    o.report = Json{{"command", command}, {"error", error_payload(e)}};
    o.exit_code = exit_code_for(e.kind());
    return o;
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qav::cli
