#include <gtest/gtest.h>

#include <random>

#include "pidc/commutator/decompose.hpp"
#include "pidc/commutator/field.hpp"
#include "test_support.hpp"

using namespace pidc;
using namespace pidc::testing;

namespace {
const IntegerRing ZZ;
}  // namespace

TEST(Criterion, Examples) {
  std::mt19937_64 rng(1);
  auto x = random_int_matrix(rng, 4, 5);
  auto y = random_int_matrix(rng, 4, 5);
  EXPECT_TRUE(criterion_check(ZZ, x, commutator(x, y)).satisfied);
  auto rep = criterion_check(ZZ, identity(ZZ, 3), from_ints(ZZ, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_FALSE(rep.satisfied);
  EXPECT_EQ(rep.traces[0], 1);
  // LR zero pattern with c(A) = 0: every Tr(P_4^r A) vanishes.
  auto a = from_ints(ZZ, {{1, 2, 0, 0}, {3, 0, 5, 0}, {7, 1, -1, 2}, {1, 1, 1, 0}});
  EXPECT_TRUE(criterion_check(ZZ, pn_matrix(ZZ, 4), a).satisfied);
}

TEST(ClearDenominators, Examples) {
  FractionField<IntegerRing> qq(ZZ);
  auto x = from_ints(ZZ, {{0, 1, 0}, {0, 0, 1}, {6, -11, 6}});
  std::mt19937_64 rng(2);
  auto m = to_fractions(qq, random_int_matrix(rng, 3, 5));
  // Add a polynomial in X with denominator 6; the commutator stays integral.
  auto poly = to_fractions(qq, x * x + x);
  poly = poly.map([&](const Fraction<IntegerRing>& v) { return v * qq.make(Integer(1), Integer(6)); });
  auto full = m + poly;
  auto y = clear_denominators(ZZ, x, full);
  auto target = commutator(to_fractions(qq, x), full);
  EXPECT_EQ(to_fractions(qq, commutator(x, y)), target);
  auto plain = random_int_matrix(rng, 3, 5);
  EXPECT_EQ(clear_denominators(ZZ, x, to_fractions(qq, plain)), plain);
}

TEST(FieldCommutator, Examples) {
  PolyRing F2(2);
  ResidueField<IntegerRing> f2(ZZ, Integer(2));
  auto one = identity(f2, 2);
  auto w = field_commutator(f2, one);
  EXPECT_EQ(w.x, jordan_block(f2, 2, f2.zero()));
  EXPECT_TRUE(w.verifies(one));

  FractionField<IntegerRing> qq(ZZ);
  auto a = to_fractions(qq, from_ints(ZZ, {{1, 0}, {0, -1}}));
  auto wq = field_commutator(qq, a);
  EXPECT_TRUE(wq.verifies(a));
  EXPECT_EQ(min_poly_degree(qq, wq.x), 2u);

  std::mt19937_64 rng(3);
  ResidueField<IntegerRing> f5(ZZ, Integer(5));
  for (int it = 0; it < 50; ++it) {
    std::size_t n = 2 + it % 4;
    auto m = reduce_mod(f5, make_trace_zero(ZZ, random_int_matrix(rng, n, 4)));
    auto out = field_commutator(f5, m);
    EXPECT_TRUE(out.verifies(m));
    EXPECT_EQ(min_poly_degree(f5, out.x), n);
  }
  EXPECT_THROW(field_commutator(f5, identity(f5, 2)), PreconditionError);
}

TEST(Decompose2x2, Examples) {
  auto a = from_ints(ZZ, {{1, 0}, {0, -1}});
  auto w = decompose_2x2(ZZ, a);
  EXPECT_TRUE(w.verifies(a));
  EXPECT_EQ(w.x, from_ints(ZZ, {{0, 1}, {0, 0}}));

  auto hard = from_ints(ZZ, {{6, 10}, {15, -6}});
  auto wh = decompose_2x2(ZZ, hard);
  EXPECT_TRUE(wh.verifies(hard));
  EXPECT_EQ(wh.log[1].second, "coprimify");

  auto zero = zero_matrix(ZZ, 2);
  auto wz = decompose_2x2(ZZ, zero);
  EXPECT_TRUE(wz.verifies(zero));
  EXPECT_THROW(decompose_2x2(ZZ, identity(ZZ, 2)), PreconditionError);
}

TEST(Decompose, Examples) {
  auto a = from_ints(ZZ, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  EXPECT_TRUE(decompose(ZZ, a).verifies(a));
  auto z = zero_matrix(ZZ, 4);
  auto wz = decompose(ZZ, z);
  EXPECT_TRUE(wz.verifies(z));
  EXPECT_EQ(wz.y, z);
  EXPECT_THROW(decompose(ZZ, identity(ZZ, 3)), PreconditionError);
}

TEST(Decompose, RandomIntegers) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 120; ++it) {
    std::size_t n = 2 + it % 4;
    auto a = make_trace_zero(ZZ, random_int_matrix(rng, n, 50));
    auto w = decompose(ZZ, a);
    ASSERT_TRUE(w.verifies(a)) << it;
  }
}

TEST(Decompose, RandomPolynomials) {
  PolyRing F3(3);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = 3 + it % 2;
    auto a = make_trace_zero(F3, random_poly_matrix(rng, 3, n, 2));
    auto w = decompose(F3, a);
    ASSERT_TRUE(w.verifies(a)) << it;
  }
  // Nonzero scalar with trace zero in characteristic 3.
  auto s = scalar_matrix(F3, 3, Poly(3, {1, 1}));
  EXPECT_TRUE(decompose(F3, s).verifies(s));
}

TEST(DecomposeModN, Examples) {
  auto d = from_ints(ZZ, {{3, 0}, {0, 9}});
  auto w = decompose_mod_n(Integer(12), d);
  EXPECT_TRUE(verifies_mod_n(Integer(12), w, d));
  auto e = from_ints(ZZ, {{0, 1}, {0, 0}});
  EXPECT_TRUE(verifies_mod_n(Integer(4), decompose_mod_n(Integer(4), e), e));
  EXPECT_THROW(decompose_mod_n(Integer(12), from_ints(ZZ, {{1, 0}, {0, 0}})), PreconditionError);
}

TEST(Decompose3x3Regular, Examples) {
  auto a = from_ints(ZZ, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  auto w = decompose_3x3_regular(ZZ, a);
  EXPECT_TRUE(w.verifies(a));
  for (long p : {2, 3, 5, 7}) EXPECT_TRUE(is_regular_mod_prime(ZZ, w.x, Integer(p)).regular);
  std::mt19937_64 rng(6);
  for (int it = 0; it < 30; ++it) {
    auto m = make_trace_zero(ZZ, random_int_matrix(rng, 3, 50));
    auto out = decompose_3x3_regular(ZZ, m);
    ASSERT_TRUE(out.verifies(m));
  }
}

TEST(Decompose, MainConstructionStructured) {
  std::mt19937_64 rng(8);
  int repaired = 0;
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 3 + it % 4;
    auto a = structured_trace_zero(rng, n, 6);
    auto w = decompose(ZZ, a);
    ASSERT_TRUE(w.verifies(a)) << it;
    for (const auto& [k, v] : w.log)
      if (k == "t") ++repaired;
  }
  // The X1 = X0 + t Q1 repair must actually run on these inputs.
  EXPECT_GT(repaired, 50);
}

TEST(MainTemplate, TraceConditionPropagates) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 3 + it % 3;
    auto a = structured_trace_zero(rng, n, 5);
    auto lr = lr_form(ZZ, a);
    auto s = exact_div(ZZ, lr.b, gcd(ZZ, lr.b(0, 0), lr.b(0, 1)));
    if (ZZ.divides(s(0, 1), even_diagonal_sum(ZZ, s))) continue;
    auto p = main_parameters(ZZ, s);
    EXPECT_TRUE(coprime(ZZ, p.x, p.y));
    EXPECT_NE(p.d0, 0);
    for (long q = -3; q <= 3; ++q) {
      auto x = main_template(ZZ, n, p.x, p.y, Integer(q));
      // Tr(XA) = 0 by the choice of x, y; every higher power follows.
      EXPECT_EQ((x * s).trace(), 0);
      EXPECT_TRUE(criterion_check(ZZ, x, s).satisfied);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Decompose, MainConstructionPolynomials) {
  PolyRing F3(3);
  std::mt19937_64 rng(10);
  int done = 0;
  for (int it = 0; it < 200 && done < 40; ++it) {
    std::size_t n = it % 2 ? 3 : 6;
    Poly d = random_poly(rng, 3, 2);
    Poly a0 = random_poly(rng, 3, 2);
    if (d.is_zero() || F3.is_unit(d) || !coprime(F3, a0, d)) continue;
    // In characteristic 3 with 3 | n the scalar part is traceless on its own.
    auto b = make_trace_zero(F3, random_poly_matrix(rng, 3, n, 1));
    auto m = scalar_matrix(F3, n, a0) + d * b;
    auto w = decompose(F3, m);
    ASSERT_TRUE(w.verifies(m));
    ++done;
  }
  EXPECT_EQ(done, 40);
}
