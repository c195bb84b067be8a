#include <gtest/gtest.h>

#include <random>

#include "pidc/similarity/lr_form.hpp"
#include "pidc/similarity/zero_diagonal.hpp"
#include "test_support.hpp"

using namespace pidc;
using namespace pidc::testing;

namespace {
const IntegerRing ZZ;

// Checks every defining property of the LR shape on b, plus the witness.
template <class R>
void expect_lr_form(const R& r, const MatrixOf<R>& a, const LaffeyReamsForm<typename R::Element>& f) {
  const auto& b = f.b;
  const std::size_t n = b.rows();
  EXPECT_EQ(check_witness(r, f.witness, a, b), "");
  EXPECT_TRUE(r.divides(r.normalize(scalar_defect_ideal(r, a)), r.normalize(f.pivot)));
  EXPECT_TRUE(r.divides(f.pivot, r.normalize(scalar_defect_ideal(r, a))));
  EXPECT_EQ(b(0, 1), f.pivot);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) EXPECT_TRUE(r.divides(f.pivot, b(i, j)));
      if (i + 2 <= j && i + 2 < n + 0 && i <= n - 3) EXPECT_TRUE(r.is_zero(b(i, j))) << i << "," << j;
    }
  for (std::size_t i = 1; i < n; ++i)
    EXPECT_TRUE(r.divides(f.pivot, typename R::Element(b(i, i) - b(0, 0))));
}
}  // namespace

TEST(RowReduce, Examples) {
  auto a = from_ints(ZZ, {{5, 4, 6}, {1, 2, 3}, {7, 8, 9}});
  auto red = row_reduce(ZZ, a, 0);
  EXPECT_EQ(red.b(0, 0), 5);
  EXPECT_EQ(red.b(0, 1), 2);
  EXPECT_EQ(red.b(0, 2), 0);
  EXPECT_EQ(check_witness(ZZ, red.witness, a, red.b), "");

  auto c = col_reduce(ZZ, a.transpose(), 0);
  EXPECT_EQ(c.b(1, 0), 2);
  EXPECT_EQ(c.b(2, 0), 0);
  EXPECT_EQ(check_witness(ZZ, c.witness, a.transpose(), c.b), "");
}

TEST(RowReduce, RandomRowsAndColumns) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 3 + it % 3;
    auto a = random_int_matrix(rng, n, 20);
    for (std::size_t u = 0; u < n; ++u) {
      auto red = row_reduce(ZZ, a, u);
      EXPECT_EQ(check_witness(ZZ, red.witness, a, red.b), "");
      Integer g = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != u && a(u, j) != 0) g = ZZ.egcd(g, a(u, j)).gcd;
      std::size_t keep = u == 0 ? 1 : 0;
      EXPECT_EQ(red.b(u, keep), ZZ.normalize(g));
      for (std::size_t j = 0; j < n; ++j)
        if (j != u && j != keep) EXPECT_EQ(red.b(u, j), 0);
      auto col = col_reduce(ZZ, a, u);
      EXPECT_EQ(check_witness(ZZ, col.witness, a, col.b), "");
      for (std::size_t i = 0; i < n; ++i)
        if (i != u && i != keep) EXPECT_EQ(col.b(i, u), 0);
    }
  }
}

TEST(B12NonzeroMod, IndexTwoPrimes) {
  auto a = from_ints(ZZ, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  std::vector<Integer> s{2};
  auto red = make_b12_nonzero_mod(ZZ, a, s);
  EXPECT_EQ(check_witness(ZZ, red.witness, a, red.b), "");
  EXPECT_FALSE(ZZ.divides(Integer(2), red.b(0, 1)));
  EXPECT_EQ(red.witness.det, 1);

  auto scalar2 = from_ints(ZZ, {{1, 0, 0}, {0, 3, 0}, {0, 0, 5}});
  EXPECT_THROW(make_b12_nonzero_mod(ZZ, scalar2, s), PreconditionError);

  PolyRing F2(2);
  Poly x(2, {0, 1});
  MatrixOf<PolyRing> m(3, 3, F2.zero());
  m(1, 1) = x;
  m(2, 2) = x * x + F2.one();
  auto primes = F2.primes_of_index(2);
  ASSERT_EQ(primes.size(), 2u);
  auto rp = make_b12_nonzero_mod(F2, m, primes);
  EXPECT_EQ(check_witness(F2, rp.witness, m, rp.b), "");
  for (const auto& p : primes) EXPECT_FALSE(F2.divides(p, rp.b(0, 1)));
}

TEST(ScalarSplit, Examples) {
  auto a = from_ints(ZZ, {{2, 4, 0}, {0, 2, 0}, {0, 0, 2}});
  auto s = scalar_split(ZZ, a);
  EXPECT_EQ(s.a, 2);
  EXPECT_EQ(s.d, 4);
  EXPECT_EQ(s.reduced, from_ints(ZZ, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_THROW(scalar_split(ZZ, scalar_matrix(ZZ, 3, Integer(7))), PreconditionError);
}

TEST(LrForm, Examples) {
  auto a = from_ints(ZZ, {{1, 0, 0}, {1, 1, 0}, {0, 0, -2}});
  auto f = lr_form(ZZ, a);
  expect_lr_form(ZZ, a, f);
  EXPECT_EQ(f.pivot, 1);

  auto b = from_ints(ZZ, {{2, 4, 0}, {0, 2, 0}, {0, 0, 2}});
  auto fb = lr_form(ZZ, b);
  expect_lr_form(ZZ, b, fb);
  EXPECT_EQ(fb.pivot, 4);

  auto d = from_ints(ZZ, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  expect_lr_form(ZZ, d, lr_form(ZZ, d));
  EXPECT_THROW(lr_form(ZZ, from_ints(ZZ, {{1, 2}, {3, 4}})), PreconditionError);
}

TEST(LrForm, RandomIntegers) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    std::size_t n = 3 + it % 3;
    auto a = random_int_matrix(rng, n, it < 75 ? 6 : 40);
    if (is_scalar(ZZ, a)) continue;
    expect_lr_form(ZZ, a, lr_form(ZZ, a));
  }
}

TEST(LrForm, StructuredIntegers) {
  // Off-diagonal entries sharing large factors force several descent rounds.
  std::mt19937_64 rng(9);
  std::size_t probes = 0;
  for (int it = 0; it < 80; ++it) {
    std::size_t n = 3 + it % 3;
    auto a = random_int_matrix(rng, n, 5);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) a(i, j) = a(i, j) * (i < j ? 15 : 7);
    if (is_scalar(ZZ, a)) continue;
    auto f = lr_form(ZZ, a);
    expect_lr_form(ZZ, a, f);
    for (const auto& rec : f.probe_log) EXPECT_LT(rec.new_factors, rec.old_factors) << rec.probe;
    probes += f.probe_log.size();
  }
  EXPECT_GT(probes, 0u);
}

TEST(LrForm, RandomPolynomials) {
  for (std::uint64_t p : {2, 3}) {
    PolyRing k(p);
    std::mt19937_64 rng(p);
    for (int it = 0; it < 60; ++it) {
      std::size_t n = 3 + it % 3;
      auto a = random_poly_matrix(rng, p, n, 2);
      if (is_scalar(k, a)) continue;
      expect_lr_form(k, a, lr_form(k, a));
    }
  }
}

TEST(ScalarDefectIdeal, ConjugationInvariant) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    auto a = random_int_matrix(rng, 4, 10);
    auto w = elementary_witness(ZZ, 4, it % 4, (it + 1) % 4, random_int(rng, -5, 5));
    auto b = w.conjugate(a);
    EXPECT_EQ(scalar_defect_ideal(ZZ, a), scalar_defect_ideal(ZZ, b));
  }
}

namespace {
template <class R>
void expect_zero_diagonal(const R& r, const MatrixOf<R>& a) {
  auto z = zero_diagonal_form(r, a);
  EXPECT_EQ(check_witness(r, z.witness, a, z.b), "");
  for (std::size_t i = 0; i < a.rows(); ++i) EXPECT_TRUE(r.is_zero(z.b(i, i)));
}

template <class R>
std::string rejected_prime(const R& r, const MatrixOf<R>& a) {
  try {
    zero_diagonal_form(r, a);
  } catch (const NotApplicable& e) {
    return e.prime();
  }
  return "";
}
}  // namespace

TEST(ZeroDiagonal, Examples) {
  auto z = from_ints(ZZ, {{0, 1, 2}, {3, 0, 4}, {5, 6, 0}});
  auto out = zero_diagonal_form(ZZ, z);
  EXPECT_EQ(out.witness.g, identity(ZZ, 3));
  expect_zero_diagonal(ZZ, from_ints(ZZ, {{1, 1, 0}, {0, 1, 1}, {1, 0, -2}}));
  expect_zero_diagonal(ZZ, from_ints(ZZ, {{1, 0, 0}, {1, 1, 0}, {0, 0, -2}}));
  expect_zero_diagonal(ZZ, from_ints(ZZ, {{2, 3}, {5, -2}}));
  expect_zero_diagonal(ZZ, from_ints(ZZ, {{6, 3, 9}, {0, 3, 0}, {3, 0, -9}}));
  EXPECT_EQ(rejected_prime(ZZ, from_ints(ZZ, {{1, 0}, {0, -1}})), "2");
  EXPECT_EQ(rejected_prime(ZZ, from_ints(ZZ, {{1, 0, 0}, {0, 1, 0}, {0, 0, -2}})), "3");
  // Zero modulo 3 but a nonzero scalar after dividing out the content.
  EXPECT_EQ(rejected_prime(ZZ, from_ints(ZZ, {{3, 0, 0}, {0, 3, 0}, {0, 0, -6}})), "3");
  EXPECT_THROW(zero_diagonal_form(ZZ, from_ints(ZZ, {{1, 0}, {0, 1}})), PreconditionError);

  PolyRing F3(3);
  auto id3 = identity(F3, 3);
  EXPECT_FALSE(rejected_prime(F3, id3).empty());
}

TEST(ZeroDiagonal, RandomAdmissible) {
  std::mt19937_64 rng(31);
  int done = 0;
  for (int it = 0; it < 400 && done < 100; ++it) {
    std::size_t n = 3 + it % 3;
    auto a = make_trace_zero(ZZ, random_int_matrix(rng, n, 9));
    if (is_zero_matrix(ZZ, a)) continue;
    if (!ZZ.is_unit(scalar_defect_ideal(ZZ, exact_div(ZZ, a, content(ZZ, a))))) continue;
    expect_zero_diagonal(ZZ, a);
    ++done;
  }
  EXPECT_EQ(done, 100);
  PolyRing F3(3);
  for (int it = 0; it < 30; ++it) {
    auto a = make_trace_zero(F3, random_poly_matrix(rng, 3, 3 + it % 2, 2));
    if (!F3.is_unit(scalar_defect_ideal(F3, a))) continue;
    expect_zero_diagonal(F3, a);
  }
}
