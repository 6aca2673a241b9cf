#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qav/subvariety/line.hpp"
#include "qav/torgroup/closure.hpp"
#include "qav/torgroup/toroidal.hpp"

namespace qav {

/// Candidate complex subspace E with the data of E cap Gamma.
struct SubtorusCandidate {
  Subspace space;
  std::size_t complex_dim = 0;
  IntLattice lattice;  // E cap Gamma
  std::size_t rank = 0;
  ClosureResult closure;
  bool toroidal = false;
  bool is_subtorus = false;  // rank == 2 * complex_dim and closed
  std::string origin;        // "lattice-span" or "cm-lattice"
  std::string key;
};

inline std::size_t worker_count() {
  if (const char* env = std::getenv("QAV_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<std::size_t>(v);
  }
  return 1;
}

namespace detail {

/// Runs body(index, slot) for index in [0, total) over worker_count()
/// threads; `slot` is the calling worker's private accumulator.
template <typename Acc, typename Body>
std::vector<Acc> parallel_indices(std::uint64_t total, Body body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(worker_count(), total));
  std::vector<Acc> slots(workers);
  if (workers == 1) {
    for (std::uint64_t t = 0; t < total; ++t) body(t, slots[0]);
    return slots;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t t = w; t < total; t += workers) body(t, slots[w]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return slots;
}

inline std::uint64_t box_size(std::size_t dims, long height) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < dims; ++k) {
    if (total > (std::uint64_t(1) << 40) / std::uint64_t(2 * height + 1))
      fail(ErrorKind::InvalidArgument, "enumeration box too large");
    total *= std::uint64_t(2 * height + 1);
  }
  return total;
}

/// Decodes index t into a vector of [-H, H]^dims; returns false unless the
/// vector is primitive with first nonzero entry positive.
inline bool primitive_at(std::uint64_t t, std::size_t dims, long height, std::vector<long>& out) {
  out.assign(dims, 0);
  const std::uint64_t base = std::uint64_t(2 * height + 1);
  for (std::size_t k = dims; k-- > 0;) {
    out[k] = static_cast<long>(t % base) - height;
    t /= base;
  }
  long g = 0;
  for (long x : out) g = std::gcd(g, x);
  if (g != 1) return false;
  for (long x : out)
    if (x != 0) return x > 0;
  return false;
}

inline IntVector to_int_vector(const std::vector<long>& v) {
  IntVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t x = start; x < n; ++x) {
    cur.push_back(x);
    subsets(n, k, x + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

/// Matrix of v -> v wedge p for p in the (k)-th exterior power of Q^N.
inline IntMatrix wedge_matrix(const IntVector& p, const std::vector<std::vector<std::size_t>>& k_sets,
                              const std::vector<std::vector<std::size_t>>& k1_sets, std::size_t N) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t s = 0; s < k_sets.size(); ++s) index[k_sets[s]] = s;
  IntMatrix m(k1_sets.size(), N);
  for (std::size_t row = 0; row < k1_sets.size(); ++row) {
    const auto& t = k1_sets[row];
    for (std::size_t pos = 0; pos < t.size(); ++pos) {
      std::vector<std::size_t> rest = t;
      rest.erase(rest.begin() + static_cast<long>(pos));
      const Integer& coeff = p[index.at(rest)];
      m(row, t[pos]) = pos % 2 ? Integer(-coeff) : coeff;
    }
  }
  return m;
}

}  // namespace detail

/// Analyses one complex subspace: E cap Gamma, toroidality of the induced
/// group, and closedness of E + Gamma.
inline SubtorusCandidate analyse_candidate(const Subspace& e, const PeriodLattice& p, std::string origin) {
  SubtorusCandidate c;
  c.space = e;
  c.complex_dim = e.dim() / 2;
  c.lattice = subgroup_lattice(e, p);
  c.rank = c.lattice.rank();
  c.closure = closure_of(e, p);
  c.origin = std::move(origin);
  c.key = e.key(p.symbols());
  if (c.rank >= c.complex_dim + 1) {
    const SubPeriodLattice sub = sub_period_lattice(e, c.lattice, p);
    c.toroidal = sub.spans() && sub.periods && is_toroidal(*sub.periods).toroidal;
  }
  c.is_subtorus = c.rank == 2 * c.complex_dim && c.closure.is_closed;
  return c;
}

namespace detail {

/// Lattices (keyed canonically) of all lines through primitive lattice
/// points of height <= H meeting Gamma in rank >= 2.
inline std::map<std::string, IntLattice> rich_lines(const PeriodLattice& p, long height) {
  const LineSearch search(p);
  const std::size_t N = p.rank();
  using Acc = std::map<std::string, IntLattice>;
  auto slots = parallel_indices<Acc>(box_size(N, height), [&](std::uint64_t t, Acc& acc) {
    std::vector<long> a;
    if (!primitive_at(t, N, height, a)) return;
    IntLattice l = search.lattice_through(to_int_vector(a));
    if (l.rank() >= 2) acc.emplace(l.key(), std::move(l));
  });
  Acc merged;
  for (auto& s : slots) merged.merge(s);
  return merged;
}

/// Saturated rank-(d+1) sublattices of Gamma whose image spans at most d
/// complex dimensions, found through their Pluecker coordinates: the
/// vanishing of every (d+1)-minor of P L is linear in those coordinates.
inline std::map<std::string, IntLattice> rich_sublattices(const PeriodLattice& p, std::size_t d, long height) {
  const std::size_t n = p.n(), N = p.rank(), k = d + 1;
  const auto col_sets = subsets(N, k);
  const auto row_sets = subsets(n, k);
  ComplexMatrix cond(row_sets.size(), col_sets.size());
  for (std::size_t r = 0; r < row_sets.size(); ++r)
    for (std::size_t s = 0; s < col_sets.size(); ++s) {
      ComplexMatrix minor(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) minor(a, b) = p.periods()(row_sets[r][a], col_sets[s][b]);
      cond(r, s) = determinant(minor);
    }
  const IntLattice pl = integer_kernel(rational_conditions(cond));
  const auto k1_sets = subsets(N, k + 1);
  using Acc = std::map<std::string, IntLattice>;
  auto slots = parallel_indices<Acc>(box_size(pl.rank(), height), [&](std::uint64_t t, Acc& acc) {
    std::vector<long> c;
    if (!primitive_at(t, pl.rank(), height, c)) return;
    IntVector coords(col_sets.size(), Integer(0));
    for (std::size_t j = 0; j < pl.rank(); ++j)
      if (c[j] != 0)
        for (std::size_t s = 0; s < coords.size(); ++s) coords[s] += c[j] * pl.basis()(s, j);
    IntLattice l = k1_sets.empty() ? IntLattice::full(N) : integer_kernel(wedge_matrix(coords, col_sets, k1_sets, N));
    if (l.rank() == k) acc.emplace(l.key(), std::move(l));
  });
  Acc merged;
  for (auto& s : slots) merged.merge(s);
  return merged;
}

inline Subspace complex_span_of(const IntLattice& l, const PeriodLattice& p) {
  std::vector<ComplexVector> images;
  for (std::size_t j = 0; j < l.rank(); ++j) images.push_back(p.image(l.basis_vector(j)));
  return Subspace::complex_span(p.n(), images);
}

}  // namespace detail

/// Complex d-dimensional subspaces E with rank(E cap Gamma) >= d + 1
/// reachable at height H, plus the complex span of Cm cap Gamma when it
/// has dimension d. Sorted by canonical subspace key.
inline std::vector<SubtorusCandidate> find_subtori(const PeriodLattice& p, std::size_t d, long height) {
  if (d < 1 || d >= p.n()) fail(ErrorKind::InvalidArgument, "subtorus dimension must satisfy 1 <= d < n");
  if (height < 1) fail(ErrorKind::InvalidArgument, "height bound must be positive");
  std::map<std::string, SubtorusCandidate> found;
  auto consider = [&](const Subspace& e, const char* origin) {
    if (e.dim() != 2 * d) return;
    const std::string key = e.key(p.symbols());
    if (found.count(key)) return;
    SubtorusCandidate c = analyse_candidate(e, p, origin);
    if (c.rank >= d + 1) found.emplace(key, std::move(c));
  };
  const auto lattices = d == 1 ? detail::rich_lines(p, height) : detail::rich_sublattices(p, d, height);
  for (const auto& [key, l] : lattices) consider(detail::complex_span_of(l, p), "lattice-span");
  const Subspace cm = max_complex_subspace(real_span(p));
  if (cm.dim() > 0) consider(detail::complex_span_of(subgroup_lattice(cm, p), p), "cm-lattice");
  std::vector<SubtorusCandidate> out;
  for (auto& [key, c] : found) out.push_back(std::move(c));
  return out;
}

struct SimplicityCertificate {
  long height_bound = 0;
  std::vector<std::size_t> dimension_range;
  bool simple_up_to_height = false;
  std::optional<SubtorusCandidate> counterexample;
  std::vector<SubtorusCandidate> candidates;

  std::string verdict() const { return simple_up_to_height ? "no_closed_toroidal_subgroup_up_to_H" : "counterexample"; }
  /// Toroidal candidates that fail to be closed.
  std::vector<const SubtorusCandidate*> nonclosed_toroidal() const {
    std::vector<const SubtorusCandidate*> out;
    for (const auto& c : candidates)
      if (c.toroidal && !c.closure.is_closed) out.push_back(&c);
    return out;
  }
};

/// Bounded search for a closed toroidal subgroup of positive dimension
/// below n. A negative answer holds only up to the height bound.
inline SimplicityCertificate geometric_simplicity_certificate(const PeriodLattice& p, long height) {
  if (!is_toroidal(p).toroidal) fail(ErrorKind::NotToroidal, "input group is not toroidal");
  SimplicityCertificate cert;
  cert.height_bound = height;
  for (std::size_t d = 1; d < p.n(); ++d) {
    cert.dimension_range.push_back(d);
    for (auto& c : find_subtori(p, d, height)) cert.candidates.push_back(std::move(c));
  }
  for (const auto& c : cert.candidates)
    if (c.toroidal && c.closure.is_closed) {
      cert.counterexample = c;
      break;
    }
  cert.simple_up_to_height = !cert.counterexample;
  return cert;
}

struct HomomorphismCheck {
  bool ok = false;
  IntMatrix rational_rep;
  std::optional<std::size_t> failing_generator;
};

/// Checks Phi(Gamma_src) in Gamma_dst and returns C with Phi P_src = P_dst C.
inline HomomorphismCheck verify_homomorphism(const ComplexMatrix& phi, const PeriodLattice& src, const PeriodLattice& dst) {
  if (phi.rows() != dst.n() || phi.cols() != src.n()) fail(ErrorKind::DimensionMismatch, "Phi must be n_dst x n_src");
  const std::size_t Nd = dst.rank();
  HomomorphismCheck out;
  out.rational_rep = IntMatrix(Nd, src.rank());
  const ComplexMatrix image = phi * src.periods();
  for (std::size_t j = 0; j < src.rank(); ++j) {
    ComplexMatrix aug(dst.n(), Nd + 1);
    for (std::size_t r = 0; r < dst.n(); ++r) {
      for (std::size_t c = 0; c < Nd; ++c) aug(r, c) = dst.periods()(r, c);
      aug(r, Nd) = image(r, j);
    }
    const RatMatrix cond = rational_conditions(aug);
    RatMatrix a(cond.rows(), Nd);
    std::vector<Rational> b(cond.rows());
    for (std::size_t r = 0; r < cond.rows(); ++r) {
      for (std::size_t c = 0; c < Nd; ++c) a(r, c) = cond(r, c);
      b[r] = cond(r, Nd);
    }
    const auto x = solve(a, b);
    bool integral = x.has_value();
    if (integral)
      for (const auto& v : *x) integral = integral && v.get_den() == 1;
    if (!integral) {
      out.failing_generator = j;
      return out;
    }
    for (std::size_t r = 0; r < Nd; ++r) out.rational_rep(r, j) = (*x)[r].get_num();
  }
  out.ok = true;
  return out;
}

}  // namespace qav
