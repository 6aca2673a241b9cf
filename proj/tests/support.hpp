#pragma once

#include <memory>
#include <ostream>
#include <type_traits>
#include <random>
#include <string>
#include <vector>

#include "qav/scalar/expr.hpp"
#include "qav/torgroup/period_lattice.hpp"

namespace qav {

inline const SymbolTable& print_table() {
  static const SymbolTable t({"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"});
  return t;
}
inline void PrintTo(const Scalar& x, std::ostream* os) { *os << to_string(x, print_table()); }
inline void PrintTo(const RatFunc& x, std::ostream* os) { *os << to_string(x, print_table()); }
inline void PrintTo(const Poly& x, std::ostream* os) { *os << to_string(x, print_table()); }
inline void PrintTo(const Monomial& m, std::ostream* os) { *os << to_string(Poly(m, Rational(1)), print_table()); }
template <typename T>
void PrintTo(const Matrix<T>& m, std::ostream* os) {
  *os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    *os << (r ? "; " : "");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      *os << (c ? ", " : "");
      if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>)
        *os << m(r, c).get_str();
      else
        PrintTo(m(r, c), os);
    }
  }
  *os << "]";
}

}  // namespace qav

namespace qav::test {

inline SymbolTablePtr symbols(std::vector<std::string> names) {
  return std::make_shared<const SymbolTable>(std::move(names));
}

inline Scalar sc(const std::string& text, const SymbolTable& t) { return parse_scalar(text, t); }

inline ComplexMatrix cmat(const std::vector<std::vector<std::string>>& rows, const SymbolTable& t) {
  ComplexMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = sc(rows[r][c], t);
  return m;
}

inline PeriodLattice lattice(const std::vector<std::vector<std::string>>& rows, std::vector<std::string> names = {}) {
  auto t = symbols(std::move(names));
  return PeriodLattice(t, cmat(rows, *t));
}

inline IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Integer>> v;
  for (const auto& r : rows) {
    v.emplace_back();
    for (long x : r) v.back().emplace_back(x);
  }
  return IntMatrix::from_rows(v, v.empty() ? 0 : v[0].size());
}

inline IntVector ivec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatMatrix rmat(std::initializer_list<std::initializer_list<long>> rows) { return to_rat_matrix(imat(rows)); }

/// 2x4 period matrix of a simple abelian surface, one symbol.
inline PeriodLattice surface_matrix() { return lattice({{"1", "0", "i*r^3", "r"}, {"0", "1", "r", "i"}}, {"r"}); }

/// 3x5 example with two symbols; r2 can be replaced by a literal.
inline PeriodLattice example_matrix(const std::string& r2 = "r2") {
  return lattice({{"0", "1", "0", "i*r1^3", "r1"}, {"0", "0", "1", "r1", "i"}, {"1", "0", "0", "0", r2}}, {"r1", "r2"});
}

inline std::string str(const Scalar& x, const SymbolTable& t) { return to_string(x, t); }

}  // namespace qav::test
