#include <gtest/gtest.h>

#include <random>

#include "pidc/ring/fraction_field.hpp"
#include "pidc/ring/integer_ring.hpp"
#include "pidc/ring/poly_ring.hpp"
#include "pidc/ring/residue_field.hpp"
#include "pidc/ring/ring_ops.hpp"

using namespace pidc;

namespace {

const IntegerRing ZZ;

Poly P(std::uint64_t p, std::vector<std::uint64_t> c) { return Poly(p, std::move(c)); }

// Independent primality check by trial division up to the square root.
bool trial_prime(const Integer& n) {
  Integer m = abs(n);
  if (m < 2) return false;
  for (Integer d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

template <class R>
typename R::Element expand(const R& r, const Factorisation<typename R::Element>& f) {
  auto v = f.unit;
  for (const auto& pp : f.factors)
    for (unsigned i = 0; i < pp.exponent; ++i) v = v * pp.prime;
  return v;
}

Poly random_poly(std::mt19937_64& rng, std::uint64_t p, int maxdeg) {
  std::vector<std::uint64_t> c(maxdeg + 1);
  for (auto& v : c) v = rng() % p;
  return Poly(p, c);
}

}  // namespace

TEST(Egcd, IntegerExamples) {
  auto bz = ZZ.egcd(12, 18);
  EXPECT_EQ(bz.gcd, 6);
  EXPECT_EQ(bz.s * 12 + bz.t * 18, 6);

  auto z = ZZ.egcd(-7, 0);
  EXPECT_EQ(z.gcd, 7);
  EXPECT_EQ(z.s * -7 + z.t * 0, 7);
  EXPECT_THROW(ZZ.egcd(0, 0), DegenerateInput);
}

TEST(Egcd, PolyExample) {
  PolyRing F5(5);
  auto a = P(5, {4, 0, 1});  // x^2 - 1
  auto b = P(5, {4, 1});     // x - 1
  auto bz = F5.egcd(a, b);
  EXPECT_EQ(bz.gcd, b);
  EXPECT_EQ(bz.s * a + bz.t * b, bz.gcd);
}

TEST(Egcd, BezoutIdentityRandom) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    Integer a = static_cast<long>(rng() % 2000001) - 1000000;
    Integer b = static_cast<long>(rng() % 2000001) - 1000000;
    if (a == 0 && b == 0) continue;
    auto bz = ZZ.egcd(a, b);
    ASSERT_EQ(bz.s * a + bz.t * b, bz.gcd);
    ASSERT_GE(bz.gcd, 0);
    ASSERT_TRUE(ZZ.divides(bz.gcd, a) && ZZ.divides(bz.gcd, b));
  }
  PolyRing F3(3);
  for (int i = 0; i < 10000; ++i) {
    auto a = random_poly(rng, 3, 6), b = random_poly(rng, 3, 5);
    if (a.is_zero() && b.is_zero()) continue;
    auto bz = F3.egcd(a, b);
    ASSERT_EQ(bz.s * a + bz.t * b, bz.gcd);
    ASSERT_EQ(bz.gcd.lead(), 1u);
    ASSERT_TRUE(F3.divides(bz.gcd, a) && F3.divides(bz.gcd, b));
  }
}

TEST(IdealGenerator, Examples) {
  EXPECT_EQ(ideal_generator(ZZ, std::vector<Integer>{4, 6, 9}), 1);
  EXPECT_EQ(ideal_generator(ZZ, std::vector<Integer>{0, 0}), 0);
  EXPECT_EQ(ideal_generator(ZZ, std::vector<Integer>{6, 10, 15}), 1);
  EXPECT_EQ(ideal_generator(ZZ, std::vector<Integer>{-12, 18}), 6);
  EXPECT_THROW(ideal_generator(ZZ, std::vector<Integer>{}), DegenerateInput);
}

TEST(Factor, IntegerExamples) {
  auto f = ZZ.factor(60);
  EXPECT_EQ(f.unit, 1);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0].prime, 2);
  EXPECT_EQ(f.factors[0].exponent, 2u);
  EXPECT_EQ(f.factors[1].prime, 3);
  EXPECT_EQ(f.factors[2].prime, 5);

  auto g = ZZ.factor(186);
  ASSERT_EQ(g.primes(), (std::vector<Integer>{2, 3, 31}));
  EXPECT_THROW(ZZ.factor(0), DegenerateInput);

  auto h = ZZ.factor(-1);
  EXPECT_EQ(h.unit, -1);
  EXPECT_TRUE(h.factors.empty());
}

TEST(Factor, IntegerRoundTripAndLarge) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    Integer a = static_cast<long>(rng() % 2000000) - 1000000;
    if (a == 0) continue;
    auto f = ZZ.factor(a);
    ASSERT_EQ(expand(ZZ, f), a);
    for (const auto& pp : f.factors) ASSERT_TRUE(trial_prime(pp.prime)) << pp.prime;
    for (std::size_t k = 1; k < f.factors.size(); ++k)
      ASSERT_LT(f.factors[k - 1].prime, f.factors[k].prime);
  }
  // Product of two 31-bit primes forces the Pollard stage.
  Integer p("2147483647"), q("2147483629");
  auto f = ZZ.factor(p * q * q);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, q);
  EXPECT_EQ(f.factors[0].exponent, 2u);
  EXPECT_EQ(f.factors[1].prime, p);
}

TEST(Factor, PolyExamples) {
  PolyRing F2(2);
  auto f = F2.factor(P(2, {0, 1, 1}));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, P(2, {0, 1}));
  EXPECT_EQ(f.factors[1].prime, P(2, {1, 1}));
}

TEST(Factor, PolyRoundTrip) {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    PolyRing R(p);
    for (int i = 0; i < 300; ++i) {
      auto a = random_poly(rng, p, 1 + static_cast<int>(rng() % 9));
      if (a.is_zero()) continue;
      auto f = R.factor(a);
      ASSERT_EQ(expand(R, f), a) << R.to_string(a);
      for (const auto& pp : f.factors) {
        ASSERT_EQ(pp.prime.lead(), 1u);
        // Independent irreducibility check: no monic divisor of degree <= deg/2.
        long d = pp.prime.degree();
        for (long k = 1; 2 * k <= d; ++k) {
          mpz_class count;
          mpz_ui_pow_ui(count.get_mpz_t(), p, k);
          for (mpz_class j = 0; j < count; ++j) {
            auto low = R.element_at(j);
            std::vector<std::uint64_t> c = low.coeffs();
            c.resize(k, 0);
            c.push_back(1);
            ASSERT_FALSE(R.divides(Poly(p, c), pp.prime)) << R.to_string(pp.prime);
          }
        }
      }
    }
  }
}

TEST(Crt, Examples) {
  EXPECT_EQ(crt(ZZ, std::vector<Integer>{1, 2}, std::vector<Integer>{2, 3}), 5);
  EXPECT_EQ(crt(ZZ, std::vector<Integer>{17}, std::vector<Integer>{5}), 2);
  EXPECT_EQ(crt(ZZ, std::vector<Integer>{1, 1, 1}, std::vector<Integer>{2, 3, 5}), 1);
  EXPECT_THROW(crt(ZZ, std::vector<Integer>{1, 1}, std::vector<Integer>{4, 6}), PreconditionError);
}

TEST(Crt, ReversedOrderAgrees) {
  std::mt19937_64 rng(3);
  std::vector<Integer> mods{4, 9, 25, 7, 11};
  for (int i = 0; i < 500; ++i) {
    std::vector<Integer> res;
    for (auto& m : mods) res.push_back(static_cast<long>(rng() % 1000) - 500);
    auto x = crt(ZZ, res, mods);
    for (std::size_t k = 0; k < mods.size(); ++k) ASSERT_EQ(ZZ.rem(x - res[k], mods[k]), 0);
    std::vector<Integer> rres(res.rbegin(), res.rend()), rmods(mods.rbegin(), mods.rend());
    ASSERT_EQ(crt(ZZ, rres, rmods), x);
  }
}

TEST(MaximalIdeals, OfIndex) {
  EXPECT_EQ(ZZ.primes_of_index(2), (std::vector<Integer>{2}));
  EXPECT_TRUE(ZZ.primes_of_index(4).empty());
  PolyRing F2(2), F3(3);
  EXPECT_EQ(F2.primes_of_index(2), (std::vector<Poly>{P(2, {0, 1}), P(2, {1, 1})}));
  EXPECT_TRUE(F3.primes_of_index(2).empty());
  // x^2 + x + 1 is the only irreducible quadratic over F_2.
  EXPECT_EQ(F2.primes_of_index(4), (std::vector<Poly>{P(2, {1, 1, 1})}));
  EXPECT_EQ(F3.primes_of_index(9).size(), 3u);
}

TEST(PrimeAvoidance, Examples) {
  std::vector<Integer> S{2, 3};
  auto x = prime_avoidance(ZZ, Integer(3), Integer(5), S);
  EXPECT_EQ(x, 2);
  for (auto& p : S) EXPECT_NE(ZZ.rem(3 + 5 * x, p), 0);
  EXPECT_EQ(prime_avoidance(ZZ, Integer(1), Integer(8), std::vector<Integer>{2}), 2);
  EXPECT_EQ(prime_avoidance(ZZ, Integer(4), Integer(7), std::vector<Integer>{}), 1);
  EXPECT_THROW(prime_avoidance(ZZ, Integer(4), Integer(6), S), PreconditionError);
}

TEST(PrimeAvoidance, RandomPostcondition) {
  std::mt19937_64 rng(9);
  std::vector<Integer> S{2, 3, 5, 7, 11, 13};
  for (int i = 0; i < 2000; ++i) {
    Integer a = static_cast<long>(rng() % 2001) - 1000, b = static_cast<long>(rng() % 2001) - 1000;
    if (!coprime(ZZ, a, b)) continue;
    auto x = prime_avoidance(ZZ, a, b, S);
    for (auto& p : S) ASSERT_NE(ZZ.rem(a + b * x, p), 0);
  }
}

TEST(AvoidWithVanishing, Examples) {
  auto t = avoid_with_vanishing(ZZ, Integer(1), Integer(0), Integer(3), std::vector<Integer>{2});
  EXPECT_EQ(t, 2);
  EXPECT_EQ(avoid_with_vanishing(ZZ, Integer(0), Integer(1), Integer(5), std::vector<Integer>{}), 1);
  EXPECT_EQ(avoid_with_vanishing(ZZ, Integer(1), Integer(4), Integer(5), std::vector<Integer>{2}), 2);
  EXPECT_THROW(avoid_with_vanishing(ZZ, Integer(1), Integer(0), Integer(2), std::vector<Integer>{}),
               PreconditionError);
}

TEST(AvoidWithVanishing, RandomPostcondition) {
  std::mt19937_64 rng(13);
  std::vector<Integer> primes{3, 5, 7, 11};
  for (int i = 0; i < 2000; ++i) {
    Integer al = static_cast<long>(rng() % 201) - 100, be = static_cast<long>(rng() % 201) - 100;
    if (!coprime(ZZ, al, be)) continue;
    Integer p = primes[rng() % primes.size()];
    std::vector<Integer> S;
    for (auto& q : primes)
      if (q != p && rng() % 2) S.push_back(q);
    S.push_back(2);
    auto t = avoid_with_vanishing(ZZ, al, be, p, S);
    ASSERT_NE(ZZ.rem(t, p), 0);
    ASSERT_NE(ZZ.rem(al * t + be, p), 0);
    for (auto& q : S) ASSERT_EQ(ZZ.rem(t, q), 0);
  }
}

TEST(Coprimify, Examples) {
  auto x = coprimify(ZZ, Integer(6), Integer(10), Integer(15));
  EXPECT_TRUE(coprime(ZZ, 6 + 15 * x, 10 - 6 * x));
  // Brute force confirms x = 1 is the smallest non-negative valid choice.
  EXPECT_TRUE(coprime(ZZ, Integer(21), Integer(4)));
  EXPECT_FALSE(coprime(ZZ, Integer(6), Integer(10)));

  EXPECT_THROW(coprimify(ZZ, Integer(2), Integer(3), Integer(5)), PreconditionError);
  auto y = coprimify(ZZ, Integer(6), Integer(4), Integer(9));
  EXPECT_TRUE(coprime(ZZ, 6 + 9 * y, 4 - 6 * y));
  EXPECT_EQ(y, 1);
  // a^2 + bc = 0.
  auto z = coprimify(ZZ, Integer(6), Integer(-4), Integer(9));
  EXPECT_TRUE(coprime(ZZ, 6 + 9 * z, -4 - 6 * z));
}

TEST(Coprimify, RandomPostcondition) {
  std::mt19937_64 rng(17);
  int hits = 0;
  for (int i = 0; i < 20000 && hits < 500; ++i) {
    Integer a = static_cast<long>(rng() % 121) - 60, b = static_cast<long>(rng() % 121) - 60,
            c = static_cast<long>(rng() % 121) - 60;
    if (!ZZ.is_unit(ideal_generator(ZZ, std::vector<Integer>{a, b, c}))) continue;
    if (coprime(ZZ, a, b) || coprime(ZZ, a, c)) continue;
    ++hits;
    auto x = coprimify(ZZ, a, b, c);
    ASSERT_TRUE(coprime(ZZ, a + c * x, b - a * x)) << a << " " << b << " " << c;
  }
  EXPECT_GT(hits, 50);
}

TEST(Fractions, Arithmetic) {
  FractionField<IntegerRing> Q(ZZ);
  auto a = Q.make(2, -4);
  EXPECT_EQ(a.num(), -1);
  EXPECT_EQ(a.den(), 2);
  auto b = Q.make(1, 3);
  EXPECT_EQ(a + b, Q.make(-1, 6));
  EXPECT_EQ(a * inv(a), Q.one());
  PolyRing F3(3);
  FractionField<PolyRing> K(F3);
  auto f = K.make(P(3, {1, 1}), P(3, {2, 2}));  // (x+1)/(2x+2) = 2
  EXPECT_TRUE(f.is_integral());
  EXPECT_EQ(f, K.embed(P(3, {2})));
}

TEST(Residues, Field) {
  ResidueField<IntegerRing> F7(ZZ, 7);
  for (int k = 1; k < 7; ++k) EXPECT_EQ(F7.element(k) * inv(F7.element(k)), F7.one());
  PolyRing F2(2);
  ResidueField<PolyRing> F4(F2, P(2, {1, 1, 1}));
  EXPECT_EQ(F4.size(), 4);
  for (int k = 1; k < 4; ++k) EXPECT_EQ(F4.element(k) * inv(F4.element(k)), F4.one());
  EXPECT_THROW(ResidueField<IntegerRing>(ZZ, 6), PreconditionError);
}
