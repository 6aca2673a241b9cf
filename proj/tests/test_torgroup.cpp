#include <gtest/gtest.h>

#include <random>

#include "qav/torgroup/closure.hpp"
#include "qav/torgroup/toroidal.hpp"
#include "support.hpp"

using namespace qav;
using namespace qav::test;

namespace {

/// Span of coordinate axes of R^{2n} (indices in realified order).
Subspace axes(std::size_t ambient, std::initializer_list<std::size_t> idx) {
  std::vector<RealVector> vs;
  for (auto k : idx) vs.push_back(Subspace::unit(ambient, k));
  return Subspace::span(ambient, vs);
}

bool orthogonal_to_kernel(const IntVector& s, const std::vector<ComplexVector>& kernel) {
  for (const auto& k : kernel) {
    Scalar acc(0);
    for (std::size_t j = 0; j < s.size(); ++j) acc += Scalar(Rational(s[j])) * k[j];
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(Realify, SingleColumnOrder) {
  auto t = symbols({"r"});
  const ComplexVector g{sc("i*r^3", *t), sc("r", *t)};
  const RealVector v = realify(g);
  EXPECT_EQ(v, (RealVector{RatFunc(0), sc("r", *t).re(), sc("r^3", *t).re(), RatFunc(0)}));
}

TEST(Realify, WorkedMatricesHaveFullRealRank) {
  const PeriodLattice surface = surface_matrix();
  EXPECT_EQ(surface.realified().rows(), 4u);
  EXPECT_EQ(rank(surface.realified()), 4u);
  const PeriodLattice ex = example_matrix();
  EXPECT_EQ(ex.realified().rows(), 6u);
  EXPECT_EQ(ex.realified().cols(), 5u);
  EXPECT_EQ(rank(ex.realified()), 5u);
}

TEST(PeriodLatticeCtor, RankDeficientRejectedWithRelation) {
  try {
    (void)lattice({{"1", "2"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
    EXPECT_NE(std::string(e.what()).find("(2, -1)"), std::string::npos);
  }
  try {
    (void)lattice({{"1"}, {"i"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
  }
}

TEST(PeriodLatticeCtor, NonDiscreteGroupAccepted) {
  const PeriodLattice p = lattice({{"1", "r"}}, {"r"});
  EXPECT_FALSE(p.is_discrete());
  EXPECT_FALSE(is_toroidal(p).toroidal);
  EXPECT_TRUE(example_matrix().is_discrete());
}

TEST(PeriodLatticeCtor, SpecialisedSymbolKeepsSurfaceRank) {
  // Putting r = 1 still leaves the four realified columns independent.
  const PeriodLattice p = lattice({{"1", "0", "i", "1"}, {"0", "1", "1", "i"}});
  EXPECT_EQ(p.rank(), 4u);
}

TEST(RealSpan, ExampleIsC2TimesR) {
  const PeriodLattice p = example_matrix();
  const Subspace s = real_span(p);
  EXPECT_EQ(s.dim(), 5u);
  // Coordinates (re1, re2, re3, im1, im2, im3): everything but Im z3.
  EXPECT_EQ(s, axes(6, {0, 1, 2, 3, 4}));
}

TEST(RealSpan, StandardLatticeIsRealAxes) {
  const PeriodLattice p = lattice({{"1", "0"}, {"0", "1"}});
  EXPECT_EQ(real_span(p), axes(4, {0, 1}));
}

TEST(RealSpan, DimensionMatchesNumericRankAtWitnesses) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  auto t = symbols({"r"});
  int tested = 0;
  for (int k = 0; k < 40; ++k) {
    ComplexMatrix m(2, 3);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        m(r, c) = Scalar(RatFunc(Rational(d(rng))) + RatFunc(Poly::variable(0)) * Rational(d(rng)),
                         RatFunc(Rational(d(rng))));
    std::optional<PeriodLattice> p;
    try {
      p.emplace(t, m);
    } catch (const Error&) {
      continue;
    }
    // Numeric oracle: the rank at three rational points is at most the generic one,
    // and equals it at some point.
    std::size_t best = 0;
    for (long w : {7L, 11L, 13L}) {
      WitnessPoint pt;
      pt[0] = make_rational(w, 5);
      RatMatrix e(4, 3);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 3; ++c) e(r, c) = p->realified()(r, c).evaluate(pt);
      best = std::max(best, rank(e));
    }
    EXPECT_EQ(real_span(*p).dim(), 3u);
    EXPECT_EQ(best, 3u);
    ++tested;
  }
  EXPECT_GT(tested, 10);
}

TEST(MaxComplex, ExampleIsC2) {
  const Subspace cm = max_complex_subspace(real_span(example_matrix()));
  EXPECT_EQ(cm, axes(6, {0, 1, 3, 4}));
  EXPECT_EQ(complex_dim(cm), 2u);
  EXPECT_TRUE(cm.is_j_invariant());
}

TEST(MaxComplex, TrivialCases) {
  EXPECT_EQ(max_complex_subspace(Subspace::full(4)), Subspace::full(4));
  EXPECT_TRUE(max_complex_subspace(axes(4, {0})).is_zero());
}

TEST(Toroidal, ExampleIsToroidal) {
  const auto cert = is_toroidal(example_matrix());
  EXPECT_TRUE(cert.toroidal);
  EXPECT_FALSE(cert.sigma.has_value());
  EXPECT_TRUE(cert.character_lattice.is_zero());
}

TEST(Toroidal, ExampleWithRationalSymbolIsNot) {
  const PeriodLattice p = example_matrix("0");
  const auto cert = is_toroidal(p);
  EXPECT_FALSE(cert.toroidal);
  ASSERT_TRUE(cert.sigma.has_value());
  EXPECT_TRUE(orthogonal_to_kernel(*cert.sigma, cert.kernel));
  // The functional u with u P = sigma is exact.
  for (std::size_t j = 0; j < p.rank(); ++j) {
    Scalar acc(0);
    for (std::size_t r = 0; r < p.n(); ++r) acc += (*cert.functional)[r] * p.periods()(r, j);
    EXPECT_EQ(acc, Scalar(Rational((*cert.sigma)[j])));
  }
  // Exhaustive oracle over |sigma_i| <= 2: every solution lies in the lattice.
  int found = 0;
  std::vector<int> s(5, -2);
  while (true) {
    IntVector v(s.begin(), s.end());
    bool nonzero = false;
    for (int x : s) nonzero = nonzero || x;
    if (nonzero && orthogonal_to_kernel(v, cert.kernel)) {
      ++found;
      EXPECT_TRUE(cert.character_lattice.contains(v));
    }
    std::size_t j = 0;
    while (j < 5 && s[j] == 2) s[j++] = -2;
    if (j == 5) break;
    ++s[j];
  }
  EXPECT_GT(found, 0);
}

TEST(Toroidal, IdentityLatticeIsNot) {
  const auto cert = is_toroidal(lattice({{"1", "0"}, {"0", "1"}}));
  EXPECT_FALSE(cert.toroidal);
  EXPECT_EQ(cert.character_lattice.rank(), 2u);
}

TEST(Toroidal, EllipticCurveIsToroidal) {
  EXPECT_TRUE(is_toroidal(lattice({{"1", "i"}})).toroidal);
}

TEST(SubgroupLattice, ExampleComplexPartGivesPPrime) {
  const PeriodLattice p = example_matrix();
  const Subspace cm = max_complex_subspace(real_span(p));
  const IntLattice l = subgroup_lattice(cm, p);
  EXPECT_EQ(l, IntLattice::from_vectors(5, {ivec({0, 1, 0, 0, 0}), ivec({0, 0, 1, 0, 0}), ivec({0, 0, 0, 1, 0})}));
  EXPECT_TRUE(is_saturated(l));
  const auto sub = sub_period_lattice(cm, l, p);
  ASSERT_TRUE(sub.spans());
  const auto t = p.table();
  EXPECT_EQ(sub.periods->periods(), cmat({{"1", "0", "i*r1^3"}, {"0", "1", "r1"}}, *t));
}

TEST(SubgroupLattice, TrivialCases) {
  const PeriodLattice p = example_matrix();
  EXPECT_EQ(subgroup_lattice(Subspace::full(6), p), IntLattice::full(5));
  EXPECT_TRUE(subgroup_lattice(Subspace(6), p).is_zero());
}

TEST(Closure, ExampleComplexPartIsDense) {
  const PeriodLattice p = example_matrix();
  const Subspace cm = max_complex_subspace(real_span(p));
  const ClosureResult c = closure_of(cm, p);
  EXPECT_EQ(c.subspace_part, real_span(p));
  EXPECT_FALSE(c.is_closed);
  EXPECT_TRUE(c.characters.is_zero());
  EXPECT_TRUE(c.discrete_part.is_zero());
}

TEST(Closure, ZeroSubspaceInStandardLatticeIsClosed) {
  const PeriodLattice p = lattice({{"1", "0"}, {"0", "1"}});
  const ClosureResult c = closure_of(Subspace(4), p);
  EXPECT_TRUE(c.is_closed);
  EXPECT_TRUE(c.subspace_part.is_zero());
  EXPECT_EQ(c.discrete_part, IntLattice::full(2));
}

TEST(Closure, KroneckerLineIsDense) {
  const PeriodLattice p = lattice({{"1", "r"}}, {"r"});
  const ClosureResult c = closure_of(Subspace(2), p);
  EXPECT_FALSE(c.is_closed);
  EXPECT_EQ(c.subspace_part, axes(2, {0}));
  // Numeric sampling at a rational approximant of sqrt 2: Z + Z r meets
  // every interval of width 1/50 in [0, 1) for |b| <= 200.
  const Rational r = make_rational(1414213562, 1000000000);
  std::vector<bool> hit(50, false);
  for (long b = -200; b <= 200; ++b) {
    Rational x = r * b;
    x -= Rational(floor_div(x.get_num(), x.get_den()));
    const Rational scaled = x * 50;
    Integer cell = floor_div(scaled.get_num(), scaled.get_den());
    hit[cell.get_ui()] = true;
  }
  for (bool h : hit) EXPECT_TRUE(h);
  // Rational specialisation is closed.
  EXPECT_TRUE(closure_of(Subspace(2), lattice({{"1", "i"}})).is_closed);
}

TEST(Closure, IdempotentAndRealSpanClosed) {
  for (const PeriodLattice& p : {example_matrix(), surface_matrix(), lattice({{"1", "r"}}, {"r"})}) {
    const ClosureResult whole = closure_of(real_span(p), p);
    EXPECT_TRUE(whole.is_closed);
    const Subspace cm = max_complex_subspace(real_span(p));
    const ClosureResult once = closure_of(cm, p);
    EXPECT_TRUE(closure_of(once.subspace_part, p).is_closed);
    EXPECT_EQ(closure_of(once.subspace_part, p).subspace_part, once.subspace_part);
  }
}

TEST(StandardSplitting, Example) {
  const auto s = standard_splitting(example_matrix());
  EXPECT_EQ(s.cm, axes(6, {0, 1, 3, 4}));
  EXPECT_EQ(s.w, axes(6, {2}));
}

TEST(StandardSplitting, CompactAndRankNCases) {
  const auto torus = standard_splitting(lattice({{"1", "i"}}));
  EXPECT_TRUE(torus.w.is_zero());
  EXPECT_EQ(torus.cm.dim(), 2u);
  const auto cstar = standard_splitting(lattice({{"1"}}));
  EXPECT_TRUE(cstar.cm.is_zero());
  EXPECT_EQ(cstar.w, axes(2, {0}));
}
