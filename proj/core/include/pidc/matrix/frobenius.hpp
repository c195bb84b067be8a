#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/centralizer.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"

namespace pidc {

/// Companion matrix of x^d + a_{d-1} x^{d-1} + ... + a_0 with ones on the
/// superdiagonal and -a_0, ..., -a_{d-1} along the last row.
template <class K>
MatrixOf<K> companion(const K& k, const Vec<typename K::Element>& a) {
  const std::size_t d = a.size();
  if (d == 0) throw DegenerateInput("companion of a constant polynomial");
  auto c = zero_matrix(k, d);
  for (std::size_t i = 0; i + 1 < d; ++i) c(i, i + 1) = k.one();
  for (std::size_t j = 0; j < d; ++j) c(d - 1, j) = -a[j];
  return c;
}

/// Visits nonzero vectors over K in a fixed order: standard basis vectors
/// first, then all coefficient vectors over the first `base` field elements.
/// Returns the first vector accepted by `pred`.
template <class K, class Pred>
std::optional<Vec<typename K::Element>> search_vectors(const K& k, std::size_t n, std::size_t base,
                                                       Pred&& pred) {
  for (std::size_t i = 0; i < n; ++i) {
    Vec<typename K::Element> e(n, k.zero());
    e[i] = k.one();
    if (pred(e)) return e;
  }
  std::vector<typename K::Element> elems;
  for (std::size_t t = 0; t < base; ++t) elems.push_back(k.element(t));
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == base) idx[pos++] = 0;
    if (pos == n) return std::nullopt;
    Vec<typename K::Element> v(n, k.zero());
    for (std::size_t i = 0; i < n; ++i) v[i] = elems[idx[i]];
    if (pred(v)) return v;
  }
}

/// Coefficient range that is guaranteed to contain a vector of maximal local
/// order: the whole field when finite, else n + 2 values.
template <class K>
std::size_t search_base(const K& k, std::size_t n) {
  mpz_class size = k.size();
  if (size == 0 || size > static_cast<long>(n + 2)) return n + 2;
  return size.get_ui();
}

template <class E>
struct FrobeniusForm {
  /// Invariant factors as a_0..a_{d-1} of monic polynomials, largest degree first.
  std::vector<Vec<E>> invariant_factors;
  Matrix<E> form;
  /// g with g A g^-1 = form.
  SimilarityWitness<E> witness;
};

namespace detail {

// Columns of P with P^-1 A P block diagonal companion, plus the factors.
template <class K>
void frobenius_basis(const K& k, const MatrixOf<K>& a, MatrixOf<K>& p,
                     std::vector<Vec<typename K::Element>>& factors) {
  using E = typename K::Element;
  const std::size_t m = a.rows();
  const std::size_t d = min_poly_degree(k, a);
  auto v = search_vectors(k, m, search_base(k, m), [&](const Vec<E>& cand) {
    return rank(k, krylov_matrix(k, a, cand)) == d;
  });
  if (!v) throw InvariantFailure("no vector of maximal order found");

  std::vector<Vec<E>> kry{*v};
  for (std::size_t i = 1; i <= d; ++i) kry.push_back(apply(k, a, kry.back()));
  MatrixOf<K> kd(m, d, k.zero());
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < m; ++i) kd(i, j) = kry[j][i];
  auto coeffs = solve(k, kd, kry[d]);
  if (!coeffs) throw InvariantFailure("Krylov sequence did not close up");
  Vec<E> poly(d, k.zero());
  for (std::size_t i = 0; i < d; ++i) poly[i] = -(*coeffs)[i];

  // Horner basis b_d = v, b_{i-1} = A b_i + a_{i-1} v turns A into the companion form.
  std::vector<Vec<E>> basis(d);
  basis[d - 1] = *v;
  for (std::size_t i = d - 1; i >= 1; --i) {
    auto w = apply(k, a, basis[i]);
    for (std::size_t t = 0; t < m; ++t) w[t] = w[t] + poly[i] * (*v)[t];
    basis[i - 1] = std::move(w);
  }
  factors.push_back(poly);

  if (d == m) {
    p = from_columns(k, basis);
    return;
  }
  // A functional with phi(A^i v) = delta_{i,d-1}; its annihilated A-orbit is an invariant complement.
  Vec<E> rhs(d, k.zero());
  rhs[d - 1] = k.one();
  auto phi = solve(k, kd.transpose(), rhs);
  if (!phi) throw InvariantFailure("cyclic subspace has no dual functional");
  MatrixOf<K> cons(d, m, k.zero());
  Vec<E> row = *phi;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < m; ++j) cons(i, j) = row[j];
    Vec<E> next(m, k.zero());
    for (std::size_t j = 0; j < m; ++j) {
      E s = k.zero();
      for (std::size_t l = 0; l < m; ++l) s = s + row[l] * a(l, j);
      next[j] = s;
    }
    row = std::move(next);
  }
  auto comp = nullspace(k, cons);
  std::vector<Vec<E>> cols = basis;
  cols.insert(cols.end(), comp.begin(), comp.end());
  auto q = from_columns(k, cols);
  auto restricted = (inverse(k, q) * a * q).block(d, d, m - d, m - d);
  MatrixOf<K> sub;
  frobenius_basis(k, restricted, sub, factors);
  auto ext = identity(k, m);
  ext.set_block(d, d, sub);
  p = q * ext;
}

}  // namespace detail

/// Rational canonical form with a witness built from an explicit cyclic decomposition.
template <class K>
FrobeniusForm<typename K::Element> frobenius_form(const K& k, const MatrixOf<K>& a) {
  if (!a.square()) throw PreconditionError("frobenius_form of a non-square matrix");
  const std::size_t n = a.rows();
  MatrixOf<K> p;
  std::vector<Vec<typename K::Element>> factors;
  detail::frobenius_basis(k, a, p, factors);
  auto form = zero_matrix(k, n);
  std::size_t off = 0;
  for (const auto& f : factors) {
    form.set_block(off, off, companion(k, f));
    off += f.size();
  }
  auto pinv = inverse(k, p);
  return {factors, form, {pinv, p, det_field(k, pinv)}};
}

}  // namespace pidc
