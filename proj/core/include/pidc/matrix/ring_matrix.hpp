#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/matrix.hpp"
#include "pidc/ring/ring_ops.hpp"

namespace pidc {

// Constructors and ring-aware helpers for matrices over a ring or field
// object `K` providing zero(), one() and element arithmetic. Indices are
// 0-based throughout the code; comments use 1-based names where they refer
// to standard matrix positions.

template <class K>
using MatrixOf = Matrix<typename K::Element>;

template <class K>
MatrixOf<K> zero_matrix(const K& k, std::size_t n) {
  return MatrixOf<K>(n, n, k.zero());
}

template <class K>
MatrixOf<K> identity(const K& k, std::size_t n) {
  return MatrixOf<K>::identity(n, k.zero(), k.one());
}

/// Matrix unit E_uv.
template <class K>
MatrixOf<K> unit_matrix(const K& k, std::size_t n, std::size_t u, std::size_t v) {
  auto m = zero_matrix(k, n);
  m(u, v) = k.one();
  return m;
}

/// 1 + lambda E_uv for u != v; its inverse is 1 - lambda E_uv.
template <class K>
MatrixOf<K> elementary(const K& k, std::size_t n, std::size_t u, std::size_t v,
                       const typename K::Element& lambda) {
  if (u == v) throw PreconditionError("elementary matrix needs u != v");
  auto m = identity(k, n);
  m(u, v) = lambda;
  return m;
}

/// M_ij(x, y, z, w) = 1 + (x-1)E_ii + yE_ij + zE_ji + (w-1)E_jj, with xw - yz = 1.
template <class K>
MatrixOf<K> embedded_sl2(const K& k, std::size_t n, std::size_t i, std::size_t j,
                         const typename K::Element& x, const typename K::Element& y,
                         const typename K::Element& z, const typename K::Element& w) {
  if (i == j) throw PreconditionError("M_ij needs i != j");
  if (!(x * w - y * z == k.one())) throw PreconditionError("M_ij needs xw - yz = 1");
  auto m = identity(k, n);
  m(i, i) = x;
  m(i, j) = y;
  m(j, i) = z;
  m(j, j) = w;
  return m;
}

/// P with P(i, perm[i]) = 1, so (P A P^T)(i, j) = A(perm[i], perm[j]).
template <class K>
MatrixOf<K> permutation_matrix(const K& k, const std::vector<std::size_t>& perm) {
  auto m = zero_matrix(k, perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m(i, perm[i]) = k.one();
  return m;
}

template <class K>
MatrixOf<K> scalar_matrix(const K& k, std::size_t n, const typename K::Element& a) {
  auto m = zero_matrix(k, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = a;
  return m;
}

template <class K>
bool is_zero_matrix(const K& k, const MatrixOf<K>& a) {
  for (const auto& v : a.data())
    if (!(v == k.zero())) return false;
  return true;
}

template <class K>
bool is_scalar(const K& k, const MatrixOf<K>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j && !(a(i, j) == k.zero())) return false;
      if (i == j && !(a(i, i) == a(0, 0))) return false;
    }
  return true;
}

/// Entrywise image under a ring map.
template <class E, class F>
auto map_entries(const Matrix<E>& a, F&& f) {
  return a.map(std::forward<F>(f));
}

/// Generator of I(A) = (a_ij, a_ii - a_jj : i != j), the smallest ideal modulo which A is scalar.
template <PidRing R>
typename R::Element scalar_defect_ideal(const R& r, const MatrixOf<R>& a) {
  std::vector<typename R::Element> gens;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) gens.push_back(a(i, j));
    }
  for (std::size_t i = 1; i < a.rows(); ++i) gens.push_back(a(i, i) - a(0, 0));
  return ideal_generator(r, gens);
}

/// Generator of the ideal of all entries.
template <PidRing R>
typename R::Element content(const R& r, const MatrixOf<R>& a) {
  return ideal_generator(r, a.data());
}

template <PidRing R>
MatrixOf<R> exact_div(const R& r, const MatrixOf<R>& a, const typename R::Element& d) {
  return a.map([&](const typename R::Element& v) { return r.exact_div(v, d); });
}

/// Characteristic polynomial det(x - A) by the division-free Berkowitz
/// recursion; returns a_0..a_{n-1} with det(x - A) = a_0 + a_1 x + ... + x^n.
template <class K>
std::vector<typename K::Element> char_poly(const K& k, const MatrixOf<K>& a) {
  using E = typename K::Element;
  if (!a.square()) throw PreconditionError("char_poly of a non-square matrix");
  const std::size_t n = a.rows();
  // Coefficients highest degree first.
  std::vector<E> c{k.one(), k.zero() - a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<E> t;
    t.reserve(r + 2);
    t.push_back(k.one());
    t.push_back(k.zero() - a(r, r));
    // v = S, then repeatedly A_r v; t_k = -(R . A_r^{k-2} S).
    std::vector<E> v(r, k.zero());
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t m = 2; m <= r + 1; ++m) {
      E s = k.zero();
      for (std::size_t i = 0; i < r; ++i) s = s + a(r, i) * v[i];
      t.push_back(k.zero() - s);
      std::vector<E> w(r, k.zero());
      for (std::size_t i = 0; i < r; ++i) {
        E acc = k.zero();
        for (std::size_t j = 0; j < r; ++j) acc = acc + a(i, j) * v[j];
        w[i] = acc;
      }
      v = std::move(w);
    }
    std::vector<E> next(r + 2, k.zero());
    for (std::size_t i = 0; i < r + 2; ++i) {
      E acc = k.zero();
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) acc = acc + t[i - j] * c[j];
      next[i] = acc;
    }
    c = std::move(next);
  }
  std::vector<E> out(n, k.zero());
  for (std::size_t i = 0; i < n; ++i) out[i] = c[n - i];
  return out;
}

/// Determinant over an integral domain by fraction-free Bareiss elimination.
template <PidRing R>
typename R::Element det(const R& r, MatrixOf<R> a) {
  using E = typename R::Element;
  if (!a.square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  E sign = r.one();
  E prev = r.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (r.is_zero(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && r.is_zero(a(p, k))) ++p;
      if (p == n) return r.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = r.zero() - sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        E num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = r.exact_div(num, prev);
      }
      a(i, k) = r.zero();
    }
    prev = a(k, k);
  }
  E d = a(n - 1, n - 1) * sign;
  return d;
}

/// c(A) = a_22 + a_44 + ..., the sum of the even-position diagonal entries.
template <class K>
typename K::Element even_diagonal_sum(const K& k, const MatrixOf<K>& a) {
  typename K::Element s = k.zero();
  for (std::size_t i = 1; i < a.rows(); i += 2) s = s + a(i, i);
  return s;
}

/// Krylov matrix with columns v, Xv, ..., X^{n-1}v.
template <class K>
MatrixOf<K> krylov_matrix(const K& k, const MatrixOf<K>& x, const std::vector<typename K::Element>& v) {
  const std::size_t n = x.rows();
  if (v.size() != n) throw PreconditionError("Krylov vector has the wrong length");
  MatrixOf<K> m(n, n, k.zero());
  std::vector<typename K::Element> cur = v;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cur[i];
    if (j + 1 == n) break;
    std::vector<typename K::Element> nxt(n, k.zero());
    for (std::size_t i = 0; i < n; ++i) {
      typename K::Element acc = k.zero();
      for (std::size_t l = 0; l < n; ++l) acc = acc + x(i, l) * cur[l];
      nxt[i] = acc;
    }
    cur = std::move(nxt);
  }
  return m;
}

}  // namespace pidc
