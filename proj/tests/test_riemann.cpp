#include <gtest/gtest.h>

#include <random>

#include "qav/riemann/decompose.hpp"
#include "qav/riemann/endo.hpp"
#include "support.hpp"

using namespace qav;
using namespace qav::test;

namespace {

WitnessPoint witness(std::initializer_list<const char*> values) {
  WitnessPoint w{};
  std::size_t k = 0;
  for (const char* v : values) w[k++] = Rational(v);
  return w;
}

RiemannFormData form(const PeriodLattice& p, const std::vector<std::vector<std::string>>& rows,
                     std::optional<WitnessPoint> w = std::nullopt) {
  return {cmat(rows, p.symbols()), w, std::nullopt};
}

PeriodLattice rank3_example() { return lattice({{"1", "i", "i"}, {"0", "0", "1"}}); }
PeriodLattice product_example() { return lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i*r"}}, {"r"}); }
PeriodLattice isogeny_example() { return lattice({{"1", "i", "0", "1/3"}, {"0", "0", "1", "2*i"}}); }

Subspace axis(std::size_t n, std::size_t k) {
  ComplexVector v(n, Scalar(0));
  v[k] = Scalar(1);
  return Subspace::complex_span(n, {v});
}

template <typename F>
void expect_error(ErrorKind kind, F f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

/// Number of cosets of l in Z^k, by enumerating a box that contains a
/// full residue system.
std::size_t coset_count(const IntLattice& l, long modulus) {
  const std::size_t k = l.ambient_rank();
  for (std::size_t j = 0; j < k; ++j) {
    IntVector e(k, Integer(0));
    e[j] = modulus;
    if (!l.contains(e)) return 0;
  }
  std::vector<IntVector> reps;
  std::vector<long> digits(k, 0);
  while (true) {
    IntVector v;
    for (long x : digits) v.emplace_back(x);
    bool fresh = true;
    for (const auto& r : reps) {
      IntVector diff(k);
      for (std::size_t j = 0; j < k; ++j) diff[j] = v[j] - r[j];
      if (l.contains(diff)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(v);
    std::size_t pos = 0;
    while (pos < k && ++digits[pos] == modulus) digits[pos++] = 0;
    if (pos == k) break;
  }
  return reps.size();
}

}  // namespace

TEST(CheckAmple, IdentityOnSquareLattice) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  const auto cert = check_ample(form(p, {{"1", "0"}, {"0", "1"}}), p);
  EXPECT_EQ(cert.pairing, imat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}));
  EXPECT_EQ(cert.minors.size(), 2u);
}

TEST(CheckAmple, PairingMatchesDirectEvaluation) {
  const auto p = rank3_example();
  const auto cert = check_ample(form(p, {{"1", "0"}, {"0", "0"}}), p);
  EXPECT_EQ(cert.pairing, imat({{0, -1, -1}, {1, 0, 0}, {1, 0, 0}}));
  EXPECT_EQ(cert.cm_frame.size(), 1u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const auto gi = p.generator(i), gj = p.generator(j);
      const Scalar direct = gi[0] * gj[0].conj();
      EXPECT_EQ(Scalar(Rational(cert.pairing(i, j))), Scalar(direct.im()));
    }
}

TEST(CheckAmple, NegativeFormRejected) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  expect_error(ErrorKind::NotPositiveOnCm, [&] { check_ample(form(p, {{"-1", "0"}, {"0", "-1"}}), p); });
}

TEST(CheckAmple, NonHermitianRejected) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  expect_error(ErrorKind::NotHermitian, [&] { check_ample(form(p, {{"1", "i"}, {"i", "1"}}), p); });
}

TEST(CheckAmple, NonIntegralPairingRejected) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  expect_error(ErrorKind::NonIntegralPairing, [&] { check_ample(form(p, {{"1/2", "0"}, {"0", "1"}}), p); });
}

TEST(CheckAmple, SymbolicMinorAtWitnessAndInterval) {
  const auto p = surface_matrix();
  RiemannFormData f = form(p, {{"1/r^3", "0"}, {"0", "1"}}, witness({"3/2"}));
  const auto cert = check_ample(f, p);
  EXPECT_EQ(cert.minor_values[0], Rational(8, 27));
  EXPECT_FALSE(cert.interval_certified[0]);
  f.bounds = {{Rational(1), Rational(2)}};
  EXPECT_TRUE(check_ample(f, p).interval_certified[0]);
  f.witness = witness({"-1"});
  f.bounds.reset();
  expect_error(ErrorKind::NotPositiveOnCm, [&] { check_ample(f, p); });
  f.witness = witness({"0"});
  expect_error(ErrorKind::PoleAtWitness, [&] { check_ample(f, p); });
}

TEST(CheckAmple, IntervalContainingPoleRejected) {
  const auto p = surface_matrix();
  RiemannFormData f = form(p, {{"1/r^3", "0"}, {"0", "1"}}, witness({"1"}));
  f.bounds = {{Rational(-1), Rational(2)}};
  expect_error(ErrorKind::NotPositiveOnCm, [&] { check_ample(f, p); });
}

TEST(BuildA1, RankThreeExample) {
  const auto p = rank3_example();
  const auto cert = check_ample(form(p, {{"1", "0"}, {"0", "0"}}), p);
  EXPECT_EQ(build_A1(cert.pairing, IntMatrix::identity(3), 2), imat({{0, -1, -1}, {1, 0, 0}}));
  EXPECT_EQ(build_A1(cert.pairing, IntMatrix::identity(3), 3), cert.pairing);
  expect_error(ErrorKind::OrderingInvalid, [&] { build_A1(cert.pairing, imat({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 2); });
}

TEST(BuildA1, ProductSurfaceBlock) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  const auto cert = check_ample(form(p, {{"1", "0"}, {"0", "1"}}), p);
  EXPECT_EQ(build_A1(cert.pairing, IntMatrix::identity(4), 2), imat({{0, -1, 0, 0}, {1, 0, 0, 0}}));
}

TEST(ComplementLattice, RankThreeExample) {
  const auto c = complement_lattice(imat({{0, -1, -1}, {1, 0, 0}}), 2);
  EXPECT_EQ(c.lambda, IntLattice::from_vectors(3, {ivec({0, 1, -1})}));
  EXPECT_EQ(c.bottom_minor, -1);
  // Exhaustive kernel oracle.
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long d = -3; d <= 3; ++d) {
        const bool in_kernel = (-b - d == 0) && a == 0;
        EXPECT_EQ(in_kernel, c.kernel.contains(ivec({a, b, d})));
      }
}

TEST(ComplementLattice, ZeroFormSelectsLastUnitVectors) {
  const auto c = complement_lattice(IntMatrix(2, 4), 2);
  EXPECT_EQ(c.kernel, IntLattice::full(4));
  EXPECT_EQ(c.lambda, IntLattice::from_vectors(4, {ivec({0, 0, 1, 0}), ivec({0, 0, 0, 1})}));
  EXPECT_EQ(c.selection, (std::vector<std::size_t>{2, 3}));
}

TEST(ComplementLattice, ProductSurfaceSecondFactor) {
  const auto c = complement_lattice(imat({{0, -1, 0, 0}, {1, 0, 0, 0}}), 2);
  EXPECT_EQ(c.lambda, IntLattice::from_vectors(4, {ivec({0, 0, 1, 0}), ivec({0, 0, 0, 1})}));
}

TEST(BuildComplement, RankThreeExample) {
  const auto p = rank3_example();
  const auto s = build_complement(p, axis(2, 0), form(p, {{"1", "0"}, {"0", "0"}}));
  EXPECT_EQ(s.a1, imat({{0, -1, -1}, {1, 0, 0}}));
  EXPECT_EQ(s.lambda, IntLattice::from_vectors(3, {ivec({0, 1, -1})}));
  EXPECT_NE(s.complement.bottom_minor, 0);
  EXPECT_EQ(s.v2, axis(2, 1));
  EXPECT_EQ(s.gamma2, IntLattice::from_vectors(3, {ivec({0, -1, 1})}));
  // HNF generator maps to (0, -1), generating Z(0, 1).
  EXPECT_EQ(p.image(s.gamma2.basis_vector(0)), (ComplexVector{Scalar(0), Scalar(-1)}));
  EXPECT_EQ(s.isogeny_order, 1);
  EXPECT_EQ(s.ell, 1u);
  EXPECT_FALSE(s.x2_toroidal);
}

TEST(BuildComplement, ProductOfEllipticCurves) {
  const auto p = product_example();
  const auto s = build_complement(p, axis(2, 0), form(p, {{"1", "0"}, {"0", "1/r"}}, witness({"2"})));
  EXPECT_EQ(s.v2, axis(2, 1));
  EXPECT_EQ(s.isogeny_order, 1);
  EXPECT_TRUE(s.x2_toroidal);
}

TEST(BuildComplement, IsogenyOrderMatchesCosetCount) {
  const auto p = isogeny_example();
  const auto s = build_complement(p, axis(2, 0), form(p, {{"3", "0"}, {"0", "1/2"}}));
  EXPECT_GT(s.isogeny_order, 1);
  EXPECT_EQ(s.isogeny_order, 3);
  EXPECT_EQ(coset_count(s.gamma1 + s.gamma2, 3), 3u);
  const Rational det = abs(determinant(to_rat_matrix((s.gamma1 + s.gamma2).basis())));
  EXPECT_EQ(det, Rational(s.isogeny_order));
}

TEST(BuildComplement, PermutedGeneratorsGiveSameOrder) {
  const auto p = isogeny_example();
  const RiemannFormData f = form(p, {{"3", "0"}, {"0", "1/2"}});
  const auto base = build_complement(p, axis(2, 0), f);
  const IntMatrix perm = imat({{0, 0, 0, 1}, {0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  const auto q = p.rebased(perm);
  const auto s = build_complement(q, axis(2, 0), {f.h, f.witness, f.bounds});
  EXPECT_EQ(s.isogeny_order, base.isogeny_order);
  EXPECT_EQ(s.v2, base.v2);
}

TEST(BuildComplement, Preconditions) {
  const auto p = rank3_example();
  const auto f = form(p, {{"1", "0"}, {"0", "0"}});
  expect_error(ErrorKind::NotJInvariant, [&] {
    build_complement(p, Subspace::span(4, {Subspace::unit(4, 0)}), f);
  });
  const auto x = example_matrix();
  const auto fx = form(x, {{"1/r1^3", "0", "0"}, {"0", "1", "0"}, {"0", "0", "0"}}, witness({"3/2", "5/7"}));
  expect_error(ErrorKind::NotClosedSubvariety, [&] { build_complement(x, max_complex_subspace(real_span(x)), fx); });
}

TEST(Decompose, ProductOfEllipticCurves) {
  const auto p = product_example();
  const auto d = decompose(p, form(p, {{"1", "0"}, {"0", "1/r"}}, witness({"2"})), 2);
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.total_order, 1);
  for (const auto& f : d.factors) {
    EXPECT_EQ(f.dim(), 1u);
    EXPECT_TRUE(f.toroidal);
    ASSERT_TRUE(f.certificate);
    EXPECT_TRUE(f.certificate->simple_up_to_height);
  }
}

TEST(Decompose, RankThreeExample) {
  const auto p = rank3_example();
  const auto d = decompose(p, form(p, {{"1", "0"}, {"0", "0"}}), 2);
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.total_order, 1);
  std::size_t elliptic = 0, multiplicative = 0;
  for (const auto& f : d.factors) {
    EXPECT_EQ(f.dim(), 1u);
    if (f.periods.rank() == 2) ++elliptic;
    if (f.periods.rank() == 1) ++multiplicative;
  }
  EXPECT_EQ(elliptic, 1u);
  EXPECT_EQ(multiplicative, 1u);
}

TEST(Decompose, ExampleIsSingleFactor) {
  const auto p = example_matrix();
  const auto d = decompose(p, form(p, {{"1/r1^3", "0", "0"}, {"0", "1", "0"}, {"0", "0", "0"}}, witness({"3/2", "5/7"})), 2);
  ASSERT_EQ(d.factors.size(), 1u);
  EXPECT_TRUE(d.steps.empty());
  ASSERT_TRUE(d.factors[0].certificate);
  EXPECT_EQ(d.factors[0].certificate->verdict(), "no_closed_toroidal_subgroup_up_to_H");
}

TEST(Decompose, RestrictedFormsAreAmple) {
  const auto p = isogeny_example();
  const RiemannFormData f = form(p, {{"3", "0"}, {"0", "1/2"}});
  const auto d = decompose(p, f, 2);
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.total_order, 3);
  for (const auto& fac : d.factors) EXPECT_NO_THROW(check_ample({fac.form, f.witness, f.bounds}, fac.periods));
}

TEST(Endo, FromRational) {
  const auto p = surface_matrix();
  EXPECT_EQ(endo_from_rational(IntMatrix::identity(4), p), ComplexMatrix::identity(2));
  IntMatrix two = IntMatrix::identity(4);
  for (std::size_t k = 0; k < 4; ++k) two(k, k) = 2;
  const auto phi = endo_from_rational(two, p);
  EXPECT_EQ(phi, cmat({{"2", "0"}, {"0", "2"}}, p.symbols()));
  expect_error(ErrorKind::AnalyticInconsistent,
               [&] { endo_from_rational(imat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), p); });
}

TEST(Endo, SwapOnSquareOfCurve) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  const IntMatrix swap = imat({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  const auto phi = endo_from_rational(swap, p);
  EXPECT_EQ(phi, cmat({{"0", "1"}, {"1", "0"}}, p.symbols()));
  EXPECT_EQ(phi * p.periods(), p.periods() * to_complex(swap));
}

TEST(Endo, InjectivityOfMultiplication) {
  const auto p = surface_matrix();
  const auto r = endo_injectivity(cmat({{"3", "0"}, {"0", "3"}}, p.symbols()), p);
  EXPECT_TRUE(r.injective);
  EXPECT_TRUE(r.kernel_lattice.is_zero());
}

TEST(Endo, ProjectionOnSplitTorus) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  const auto r = endo_injectivity(cmat({{"1", "0"}, {"0", "0"}}, p.symbols()), p);
  EXPECT_FALSE(r.injective);
  EXPECT_EQ(r.kernel_lattice, IntLattice::from_vectors(4, {ivec({0, 0, 1, 0}), ivec({0, 0, 0, 1})}));
  EXPECT_EQ(r.sum_rank, 4u);
  EXPECT_TRUE(r.intersection_trivial);
  ASSERT_TRUE(r.image_subgroup);
  EXPECT_EQ(r.image_subgroup->space, axis(2, 0));
  EXPECT_TRUE(closure_of(r.image_subgroup->space, p).is_closed);
  EXPECT_TRUE(r.image_subgroup->toroidal);
}

TEST(Endo, NotAnEndomorphism) {
  const auto p = lattice({{"1", "i"}});
  expect_error(ErrorKind::NotEndomorphism, [&] { endo_injectivity(cmat({{"1/2"}}, p.symbols()), p); });
}

TEST(Endo, SmallEndomorphismsOfExampleAreInjective) {
  const auto p = example_matrix();
  const auto cs = small_endomorphisms(p, 1);
  ASSERT_FALSE(cs.empty());
  for (const auto& c : cs) {
    const auto phi = endo_from_rational(c, p);
    const auto r = endo_injectivity(phi, p);
    EXPECT_TRUE(r.injective);
    const auto inv = endq_inverse(c, p);
    IntMatrix target = IntMatrix::identity(c.rows());
    for (std::size_t k = 0; k < c.rows(); ++k) target(k, k) = inv.denominator;
    EXPECT_EQ(c * inv.numerator, target);
  }
}

TEST(EndqInverse, Examples) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  IntMatrix two = IntMatrix::identity(4);
  for (std::size_t k = 0; k < 4; ++k) two(k, k) = 2;
  auto inv = endq_inverse(two, p);
  EXPECT_EQ(inv.numerator, IntMatrix::identity(4));
  EXPECT_EQ(inv.denominator, 2);
  inv = endq_inverse(IntMatrix::identity(4), p);
  EXPECT_EQ(inv.denominator, 1);
  expect_error(ErrorKind::NotInvertible, [&] { endq_inverse(IntMatrix(4, 4), p); });
}

TEST(EndqInverse, UnimodularMatchesRationalInverse) {
  const auto p = lattice({{"1", "i", "0", "0"}, {"0", "0", "1", "i"}});
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix u = IntMatrix::identity(4);
    for (int step = 0; step < 6; ++step) {
      const std::size_t i = rng() % 4, j = rng() % 4;
      if (i != j) detail::col_axpy(u, i, j, Integer(static_cast<long>(rng() % 5) - 2));
    }
    const auto inv = endq_inverse(u, p);
    EXPECT_EQ(inv.denominator, 1);
    EXPECT_EQ(to_rat_matrix(inv.numerator), *inverse(to_rat_matrix(u)));
  }
}
