#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "pidc/commutator/decompose.hpp"
#include "pidc/matrix/matrix.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/ring/integer_ring.hpp"
#include "pidc/ring/poly_ring.hpp"

namespace pidc::testing {

inline Integer random_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Poly random_poly(std::mt19937_64& rng, std::uint64_t p, int maxdeg) {
  std::vector<std::uint64_t> c(maxdeg + 1);
  for (auto& v : c) v = rng() % p;
  return Poly(p, c);
}

inline Matrix<Integer> random_int_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  Matrix<Integer> m(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_int(rng, -bound, bound);
  return m;
}

inline Matrix<Poly> random_poly_matrix(std::mt19937_64& rng, std::uint64_t p, std::size_t n, int maxdeg) {
  Matrix<Poly> m(n, n, Poly(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_poly(rng, p, maxdeg);
  return m;
}

/// Adjust the last diagonal entry so the trace vanishes.
template <class R>
MatrixOf<R> make_trace_zero(const R& r, MatrixOf<R> m) {
  const std::size_t n = m.rows();
  typename R::Element s = r.zero();
  for (std::size_t i = 0; i + 1 < n; ++i) s = s + m(i, i);
  m(n - 1, n - 1) = r.zero() - s;
  return m;
}

template <class R>
MatrixOf<R> from_ints(const R& r, const std::vector<std::vector<long>>& rows) {
  MatrixOf<R> m(rows.size(), rows[0].size(), r.zero());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = r.from_int(rows[i][j]);
  return m;
}

/// Polynomial product of coefficient lists, low degree first.
template <class K>
std::vector<typename K::Element> poly_mul(const K& k, const std::vector<typename K::Element>& a,
                                          const std::vector<typename K::Element>& b) {
  std::vector<typename K::Element> c(a.size() + b.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

/// Trace-zero a*1 + d*B with (a, d) = (1), d | n and d > 1, scrambled by
/// transvections. After content removal its LR pivot is d, which sends the
/// decomposition through the main construction rather than the shortcut.
inline Matrix<Integer> structured_trace_zero(std::mt19937_64& rng, std::size_t n, long bound) {
  IntegerRing zz;
  std::vector<long> divs;
  for (long d = 2; d <= static_cast<long>(n); ++d)
    if (n % d == 0) divs.push_back(d);
  long d = divs[rng() % divs.size()];
  long a;
  do {
    a = static_cast<long>(rng() % 21) - 10;
  } while (std::gcd(a, d) != 1);
  auto b = random_int_matrix(rng, n, bound);
  Integer tr = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) tr += b(i, i);
  b(n - 1, n - 1) = Integer(-static_cast<long>(n) * a / d) - tr;
  auto m = scalar_matrix(zz, n, Integer(a)) + Integer(d) * b;
  for (int k = 0; k < 4; ++k) {
    std::size_t u = rng() % n, v = (u + 1 + rng() % (n - 1)) % n;
    auto g = elementary(zz, n, u, v, Integer(static_cast<long>(rng() % 5) - 2));
    auto gi = elementary(zz, n, u, v, Integer(0) - g(u, v));
    m = g * m * gi;
  }
  return m;
}

}  // namespace pidc::testing

namespace pidc::testing {

struct SubregularInstance {
  Matrix<Integer> x0;
  Integer x, y, q, p;
};

// X0 = N X N^{-1} for the main template with p | x + qy and p not dividing y,
// so X0 mod p is subregular.
inline SubregularInstance subregular_instance(std::mt19937_64& rng, std::size_t n, long p) {
  const IntegerRing zz;
  SubregularInstance s;
  s.p = p;
  for (;;) {
    s.y = random_int(rng, 1, 30);
    s.q = random_int(rng, -10, 10);
    Integer k = random_int(rng, -5, 5);
    s.x = k * p - s.q * s.y;
    Integer g;
    mpz_gcd(g.get_mpz_t(), s.x.get_mpz_t(), s.y.get_mpz_t());
    if (s.x != 0 && g == 1 && s.y % p != 0) break;
  }
  auto xm = main_template(zz, n, s.x, s.y, s.q);
  s.x0 = elementary_witness(zz, n, 1, 0, s.q).conjugate(xm);
  return s;
}

}  // namespace pidc::testing
