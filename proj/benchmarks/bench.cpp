#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "pidc/commutator/decompose.hpp"
#include "pidc/oracle/oracle.hpp"
#include "pidc/regularity/regularity.hpp"
#include "pidc/ring/poly_ring.hpp"
#include "pidc/similarity/lr_form.hpp"

using namespace pidc;

namespace {

const IntegerRing ZZ;

Matrix<Integer> random_trace_zero(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  Matrix<Integer> a(n, n, Integer(0));
  Integer t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = d(rng);
      if (i == j && i + 1 < n) t += a(i, j);
    }
  a(n - 1, n - 1) = -t;
  return a;
}

// Trace-zero a*1 + d*B with d | n, scrambled by transvections, so the
// general construction runs instead of the unit-pivot shortcut.
Matrix<Integer> structured(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> e(-6, 6);
  for (;;) {
    long d = n % 2 == 0 ? 2 : static_cast<long>(n);
    long a = e(rng);
    if (std::gcd(a, d) != 1) continue;
    Matrix<Integer> b(n, n, Integer(0));
    Integer t = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = e(rng);
    for (std::size_t i = 0; i < n; ++i) t += b(i, i);
    Integer s = n * a + d * t;
    if (s % d != 0) continue;
    b(n - 1, n - 1) -= s / d;
    Matrix<Integer> m = d * b + scalar_matrix(ZZ, n, Integer(a));
    if (m.trace() != 0) continue;
    for (int k = 0; k < 4; ++k) {
      std::size_t u = static_cast<std::size_t>(rng() % n), v = static_cast<std::size_t>(rng() % n);
      if (u == v) continue;
      m = elementary_witness(ZZ, n, u, v, Integer(e(rng))).conjugate(m);
    }
    return m;
  }
}

void BM_DecomposeRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<Matrix<Integer>> inputs;
  for (int k = 0; k < 64; ++k) inputs.push_back(random_trace_zero(rng, n, 50));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(ZZ, inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_DecomposeRandom)->DenseRange(2, 6);

void BM_DecomposeStructured(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<Matrix<Integer>> inputs;
  for (int k = 0; k < 32; ++k) inputs.push_back(structured(rng, n));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(ZZ, inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_DecomposeStructured)->DenseRange(3, 6);

void BM_DecomposePolynomials(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PolyRing f3(3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> c(0, 2);
  std::vector<Matrix<Poly>> inputs;
  for (int k = 0; k < 32; ++k) {
    Matrix<Poly> a(n, n, f3.zero());
    Poly t = f3.zero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = Poly(3, {c(rng), c(rng), c(rng)});
        if (i == j && i + 1 < n) t = t + a(i, j);
      }
    a(n - 1, n - 1) = -t;
    inputs.push_back(a);
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f3, inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_DecomposePolynomials)->DenseRange(3, 5);

void BM_NormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::vector<Matrix<Integer>> inputs;
  for (int k = 0; k < 32; ++k) inputs.push_back(structured(rng, n));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lr_form(ZZ, inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_NormalForm)->DenseRange(3, 6);

void BM_RegularModPrime(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  auto x = random_trace_zero(rng, n, 20);
  for (auto _ : state) benchmark::DoNotOptimize(is_regular_mod_prime(ZZ, x, Integer(7)));
}
BENCHMARK(BM_RegularModPrime)->DenseRange(2, 8, 2);

void BM_BruteRegularity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // Scalar matrices force a full enumeration.
  auto x = identity(ZZ, n);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_regularity(x, 3));
}
BENCHMARK(BM_BruteRegularity)->DenseRange(2, 6, 2);

void BM_ExhaustiveFields(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::exhaustive_field_commutators(3, 2));
}
BENCHMARK(BM_ExhaustiveFields);

}  // namespace

BENCHMARK_MAIN();
