#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qav/lattice/int_lattice.hpp"
#include "qav/scalar/expr.hpp"
#include "qav/scalar/format.hpp"
#include "qav/torgroup/subspace.hpp"

namespace qav {

struct NamedMatrix {
  std::string name;
  ComplexMatrix value;
  friend bool operator==(const NamedMatrix&, const NamedMatrix&) = default;
};

struct NamedIntMatrix {
  std::string name;
  IntMatrix value;
  friend bool operator==(const NamedIntMatrix&, const NamedIntMatrix&) = default;
};

struct WitnessDef {
  std::string name;
  std::vector<std::pair<std::string, Rational>> values;  // in symbol-table order
  friend bool operator==(const WitnessDef&, const WitnessDef&) = default;
};

struct BoundsDef {
  std::string name;
  std::string symbol;
  Rational lo, hi;
  friend bool operator==(const BoundsDef&, const BoundsDef&) = default;
};

enum class Coordinates { Gamma, Ambient };

/// Rows are either Gamma-coordinates (rational) of lattice vectors of the
/// referenced matrix or vectors of C^n.
struct VectorsDef {
  std::string name;
  Coordinates coords = Coordinates::Gamma;
  std::string matrix;
  std::vector<ComplexVector> rows;
  friend bool operator==(const VectorsDef&, const VectorsDef&) = default;
};

struct Document {
  SymbolTablePtr symbols = std::make_shared<const SymbolTable>();
  std::vector<NamedMatrix> matrices;
  std::vector<NamedMatrix> forms;
  std::vector<NamedIntMatrix> intmatrices;
  std::vector<WitnessDef> witnesses;
  std::vector<BoundsDef> bounds;
  std::vector<VectorsDef> subspaces;
  std::vector<VectorsDef> vectors;

  friend bool operator==(const Document& a, const Document& b) {
    return *a.symbols == *b.symbols && a.matrices == b.matrices && a.forms == b.forms &&
           a.intmatrices == b.intmatrices && a.witnesses == b.witnesses && a.bounds == b.bounds &&
           a.subspaces == b.subspaces && a.vectors == b.vectors;
  }
};

namespace detail {

template <typename T>
const T& find_named(const std::vector<T>& items, const std::optional<std::string>& name, const char* what) {
  if (!name) {
    if (items.empty()) fail(ErrorKind::UnknownName, std::string("document declares no ") + what);
    return items.front();
  }
  for (const auto& x : items)
    if (x.name == *name) return x;
  fail(ErrorKind::UnknownName, std::string("no ") + what + " named '" + *name + "'");
}

}  // namespace detail

/// Named lookups; without a name the first declaration is used.
inline const NamedMatrix& find_matrix(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.matrices, n, "matrix"); }
inline const NamedMatrix& find_form(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.forms, n, "form"); }
inline const NamedIntMatrix& find_intmatrix(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.intmatrices, n, "intmatrix"); }
inline const WitnessDef& find_witness(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.witnesses, n, "witness"); }
inline const BoundsDef& find_bounds(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.bounds, n, "bounds"); }
inline const VectorsDef& find_subspace(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.subspaces, n, "subspace"); }
inline const VectorsDef& find_vector(const Document& d, const std::optional<std::string>& n) { return detail::find_named(d.vectors, n, "vector"); }

inline WitnessPoint witness_point(const WitnessDef& w, const SymbolTable& table) {
  WitnessPoint p{};
  for (const auto& [sym, v] : w.values) p[static_cast<std::size_t>(table.find(sym))] = v;
  return p;
}

namespace detail {

const std::set<std::string, std::less<>> kKeywords = {"symbols", "matrix", "form", "intmatrix", "witness",
                                                      "bounds", "subspace", "vector", "gamma", "ambient", "x"};

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : ts_(tokenize(text)) {}

  Document parse() {
    if (peek_keyword("symbols")) parse_symbols();
    while (!ts_.at_end()) {
      const Token& t = ts_.peek();
      if (t.kind != Token::Kind::Ident) ts_.error("expected a declaration", declaration_keywords());
      if (t.text == "symbols") throw ParseError(ErrorKind::SyntaxError, t.line, t.column, "symbols must be declared once, before everything else");
      if (t.text == "matrix") {
        ts_.next();
        auto [name, m] = parse_sized_matrix();
        doc_.matrices.push_back({name, std::move(m)});
      } else if (t.text == "form") {
        ts_.next();
        auto [name, m] = parse_sized_matrix();
        doc_.forms.push_back({name, std::move(m)});
      } else if (t.text == "intmatrix") {
        ts_.next();
        parse_intmatrix();
      } else if (t.text == "witness") {
        ts_.next();
        parse_witness();
      } else if (t.text == "bounds") {
        ts_.next();
        parse_bounds();
      } else if (t.text == "subspace") {
        ts_.next();
        doc_.subspaces.push_back(parse_vectors(false));
      } else if (t.text == "vector") {
        ts_.next();
        doc_.vectors.push_back(parse_vectors(true));
      } else {
        ts_.error("expected a declaration", declaration_keywords());
      }
    }
    return std::move(doc_);
  }

 private:
  static std::set<std::string> declaration_keywords() {
    return {"'matrix'", "'form'", "'intmatrix'", "'witness'", "'bounds'", "'subspace'", "'vector'"};
  }

  bool peek_keyword(std::string_view k) const { return ts_.peek().kind == Token::Kind::Ident && ts_.peek().text == k; }

  void expect_keyword(std::string_view k) {
    if (!peek_keyword(k)) ts_.error("unexpected token", {"'" + std::string(k) + "'"});
    ts_.next();
  }

  std::string parse_new_name() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Ident || kKeywords.count(t.text) || t.text == "i") ts_.error("expected a name", {"identifier"});
    if (!names_.insert(t.text).second || symbol_names_.count(t.text))
      throw ParseError(ErrorKind::DuplicateName, t.line, t.column, "name '" + t.text + "' is already declared");
    return ts_.next().text;
  }

  std::size_t parse_size() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Number) ts_.error("expected a dimension", {"integer"});
    if (t.text.size() > 4) throw ParseError(ErrorKind::DimensionMismatch, t.line, t.column, "dimension too large");
    return std::stoul(ts_.next().text);
  }

  void parse_symbols() {
    ts_.next();
    std::vector<std::string> names;
    while (ts_.peek().kind == Token::Kind::Ident && !kKeywords.count(ts_.peek().text)) {
      const Token& t = ts_.peek();
      if (t.text == "i") throw ParseError(ErrorKind::SyntaxError, t.line, t.column, "'i' is reserved for the imaginary unit");
      if (!symbol_names_.insert(t.text).second)
        throw ParseError(ErrorKind::DuplicateName, t.line, t.column, "symbol '" + t.text + "' declared twice");
      if (names.size() == kMaxSymbols)
        throw ParseError(ErrorKind::InvalidArgument, t.line, t.column, "too many symbols");
      names.push_back(ts_.next().text);
    }
    doc_.symbols = std::make_shared<const SymbolTable>(std::move(names));
  }

  Scalar parse_expr() {
    ExpressionParser p(ts_, *doc_.symbols);
    return p.parse_expr();
  }

  Rational parse_rational() {
    const Token start = ts_.peek();
    const Scalar x = parse_expr();
    if (!x.is_rational()) throw ParseError(ErrorKind::InvalidArgument, start.line, start.column, "expected a rational constant");
    return x.re().num().constant_value();
  }

  std::vector<Scalar> parse_list() {
    std::vector<Scalar> out;
    if (ts_.peek().is("]")) return out;
    out.push_back(parse_expr());
    while (ts_.peek().is(",")) {
      ts_.next();
      out.push_back(parse_expr());
    }
    return out;
  }

  /// '[' rows ']' where rows are bracketed lists or one flat row-major list.
  std::vector<std::vector<Scalar>> parse_rows(const Token& where, std::optional<std::size_t> rows, std::size_t cols) {
    ts_.expect_punct("[");
    std::vector<std::vector<Scalar>> out;
    if (ts_.peek().is("[")) {
      while (ts_.peek().is("[")) {
        const Token row_start = ts_.peek();
        ts_.next();
        out.push_back(parse_list());
        if (!ts_.peek().is("]")) ts_.error("unexpected token", {"','", "']'"});
        ts_.next();
        if (out.back().size() != cols)
          throw ParseError(ErrorKind::DimensionMismatch, row_start.line, row_start.column,
                           "row has " + std::to_string(out.back().size()) + " entries, expected " + std::to_string(cols));
        if (ts_.peek().is(",")) ts_.next();
      }
    } else {
      const auto flat = parse_list();
      if (cols == 0 || flat.size() % cols != 0)
        throw ParseError(ErrorKind::DimensionMismatch, where.line, where.column, "entry count is not a multiple of the column count");
      for (std::size_t k = 0; k < flat.size(); k += cols) out.emplace_back(flat.begin() + static_cast<long>(k), flat.begin() + static_cast<long>(k + cols));
    }
    if (!ts_.peek().is("]")) ts_.error("unexpected token", {"','", "'['", "']'"});
    ts_.next();
    if (rows && out.size() != *rows)
      throw ParseError(ErrorKind::DimensionMismatch, where.line, where.column,
                       "matrix has " + std::to_string(out.size()) + " rows, expected " + std::to_string(*rows));
    return out;
  }

  std::pair<std::string, ComplexMatrix> parse_sized_matrix() {
    const Token where = ts_.peek();
    std::string name = parse_new_name();
    const std::size_t rows = parse_size();
    expect_keyword("x");
    const std::size_t cols = parse_size();
    const auto data = parse_rows(where, rows, cols);
    return {std::move(name), ComplexMatrix::from_rows(data, cols)};
  }

  void parse_intmatrix() {
    const Token where = ts_.peek();
    auto [name, m] = parse_sized_matrix();
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!m(r, c).is_rational() || m(r, c).re().num().constant_value().get_den() != 1)
          throw ParseError(ErrorKind::InvalidArgument, where.line, where.column, "intmatrix entries must be integers");
        out(r, c) = m(r, c).re().num().constant_value().get_num();
      }
    doc_.intmatrices.push_back({std::move(name), std::move(out)});
  }

  void parse_witness() {
    const Token where = ts_.peek();
    WitnessDef w{parse_new_name(), {}};
    std::vector<std::optional<Rational>> values(doc_.symbols->size());
    while (ts_.peek().kind == Token::Kind::Ident && ts_.peek(1).is("=")) {
      const Token sym = ts_.next();
      const int idx = doc_.symbols->find(sym.text);
      if (idx < 0) throw ParseError(ErrorKind::UnknownSymbol, sym.line, sym.column, "unknown symbol '" + sym.text + "'");
      if (values[static_cast<std::size_t>(idx)])
        throw ParseError(ErrorKind::DuplicateName, sym.line, sym.column, "symbol '" + sym.text + "' assigned twice");
      ts_.next();
      values[static_cast<std::size_t>(idx)] = parse_rational();
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!values[k])
        throw ParseError(ErrorKind::InvalidArgument, where.line, where.column, "witness does not assign symbol '" + doc_.symbols->name(k) + "'");
      w.values.emplace_back(doc_.symbols->name(k), *values[k]);
    }
    doc_.witnesses.push_back(std::move(w));
  }

  void parse_bounds() {
    BoundsDef b;
    b.name = parse_new_name();
    const Token sym = ts_.peek();
    if (sym.kind != Token::Kind::Ident) ts_.error("expected a symbol", {"symbol"});
    if (doc_.symbols->find(sym.text) < 0) throw ParseError(ErrorKind::UnknownSymbol, sym.line, sym.column, "unknown symbol '" + sym.text + "'");
    b.symbol = ts_.next().text;
    ts_.expect_punct("=");
    ts_.expect_punct("[");
    b.lo = parse_rational();
    ts_.expect_punct(",");
    b.hi = parse_rational();
    ts_.expect_punct("]");
    if (b.lo > b.hi) throw ParseError(ErrorKind::InvalidArgument, sym.line, sym.column, "empty interval");
    doc_.bounds.push_back(std::move(b));
  }

  VectorsDef parse_vectors(bool single) {
    const Token where = ts_.peek();
    VectorsDef v;
    v.name = parse_new_name();
    if (peek_keyword("gamma")) {
      v.coords = Coordinates::Gamma;
    } else if (peek_keyword("ambient")) {
      v.coords = Coordinates::Ambient;
    } else {
      ts_.error("expected a coordinate kind", {"'gamma'", "'ambient'"});
    }
    ts_.next();
    const Token mt = ts_.peek();
    if (mt.kind != Token::Kind::Ident) ts_.error("expected a matrix name", {"identifier"});
    const NamedMatrix* m = nullptr;
    for (const auto& x : doc_.matrices)
      if (x.name == mt.text) m = &x;
    if (!m) throw ParseError(ErrorKind::UnknownName, mt.line, mt.column, "no matrix named '" + mt.text + "' declared before this point");
    v.matrix = ts_.next().text;
    const std::size_t len = v.coords == Coordinates::Gamma ? m->value.cols() : m->value.rows();
    if (single) {
      const Token start = ts_.peek();
      ts_.expect_punct("[");
      v.rows.push_back(parse_list());
      ts_.expect_punct("]");
      if (v.rows[0].size() != len)
        throw ParseError(ErrorKind::DimensionMismatch, start.line, start.column, "vector length " + std::to_string(v.rows[0].size()) + ", expected " + std::to_string(len));
    } else {
      v.rows = parse_rows(where, std::nullopt, len);
    }
    if (v.coords == Coordinates::Gamma)
      for (const auto& row : v.rows)
        for (const auto& x : row)
          if (!x.is_rational()) throw ParseError(ErrorKind::InvalidArgument, where.line, where.column, "Gamma-coordinates must be rational");
    return v;
  }

  TokenStream ts_;
  Document doc_;
  std::set<std::string> names_;
  std::set<std::string> symbol_names_;
};

inline void print_rows(std::string& out, const std::vector<ComplexVector>& rows, const SymbolTable& t) {
  out += "[\n";
  for (const auto& row : rows) {
    out += "  [";
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? ", " : "") + to_string(row[c], t);
    out += "]\n";
  }
  out += "]\n";
}

inline std::vector<ComplexVector> matrix_rows(const ComplexMatrix& m) {
  std::vector<ComplexVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
  return rows;
}

}  // namespace detail

inline Document parse_document(std::string_view text) { return detail::DocumentParser(text).parse(); }

/// Canonical text form; parse_document(print_document(d)) == d.
inline std::string print_document(const Document& d) {
  const SymbolTable& t = *d.symbols;
  std::string out;
  if (t.size() > 0) {
    out += "symbols";
    for (const auto& s : t.names()) out += " " + s;
    out += "\n";
  }
  auto sized = [&](const char* kw, const std::string& name, const ComplexMatrix& m) {
    out += std::string(kw) + " " + name + " " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) + " ";
    detail::print_rows(out, detail::matrix_rows(m), t);
  };
  for (const auto& m : d.matrices) sized("matrix", m.name, m.value);
  for (const auto& m : d.forms) sized("form", m.name, m.value);
  for (const auto& m : d.intmatrices) {
    ComplexMatrix c(m.value.rows(), m.value.cols());
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) c(r, k) = Scalar(Rational(m.value(r, k)));
    sized("intmatrix", m.name, c);
  }
  for (const auto& w : d.witnesses) {
    out += "witness " + w.name;
    for (const auto& [s, v] : w.values) out += " " + s + " = " + v.get_str();
    out += "\n";
  }
  for (const auto& b : d.bounds) out += "bounds " + b.name + " " + b.symbol + " = [" + b.lo.get_str() + ", " + b.hi.get_str() + "]\n";
  auto vectors = [&](const char* kw, const VectorsDef& v, bool single) {
    out += std::string(kw) + " " + v.name + (v.coords == Coordinates::Gamma ? " gamma " : " ambient ") + v.matrix + " ";
    if (single) {
      out += "[";
      for (std::size_t c = 0; c < v.rows[0].size(); ++c) out += (c ? ", " : "") + to_string(v.rows[0][c], t);
      out += "]\n";
    } else {
      detail::print_rows(out, v.rows, t);
    }
  };
  for (const auto& v : d.subspaces) vectors("subspace", v, false);
  for (const auto& v : d.vectors) vectors("vector", v, true);
  return out;
}

}  // namespace qav
