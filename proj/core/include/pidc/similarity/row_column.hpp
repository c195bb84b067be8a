#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/ring/ring_ops.hpp"

namespace pidc {

template <class E>
struct Reduced {
  Matrix<E> b;
  SimilarityWitness<E> witness;
};

/// Conjugate (b, w) in place by the witness `step`.
template <class E>
void apply_step(Matrix<E>& b, SimilarityWitness<E>& w, const SimilarityWitness<E>& step) {
  b = step.conjugate(b);
  w = w.then(step);
}

/// Zero the entries (i, j), j >= i + 2, of row i by conjugations with
/// M_{i+1,j}(x, y, z, w) that leave rows 0..i and the zero pattern of
/// earlier rows intact. The (i, i+1) entry becomes a unit-normal generator
/// of the ideal spanned by row i to the right of the diagonal.
template <PidRing R>
void reduce_row_tail(const R& r, MatrixOf<R>& b, SimilarityWitness<typename R::Element>& w,
                     std::size_t i) {
  using E = typename R::Element;
  const std::size_t n = b.rows();
  const std::size_t c = i + 1;
  for (std::size_t j = c + 1; j < n; ++j) {
    if (r.is_zero(b(i, j))) continue;
    E d = r.egcd(b(i, c), b(i, j)).gcd;
    E y = r.exact_div(b(i, j), d);
    E wv = r.exact_div(E(r.zero() - b(i, c)), d);
    // x w - y z = 1 from a Bezout relation s w + t y = g, g a unit.
    auto bz = r.egcd(wv, y);
    E ginv = r.unit_inverse(bz.gcd);
    E x = bz.s * ginv;
    E z = E(r.zero() - bz.t) * ginv;
    auto m = embedded_sl2(r, n, c, j, x, y, z, wv);
    auto mi = embedded_sl2(r, n, c, j, wv, E(r.zero() - y), E(r.zero() - z), x);
    // B <- M^-1 B M.
    apply_step(b, w, SimilarityWitness<E>{mi, m, r.one()});
  }
  if (!r.is_zero(b(i, c))) {
    E u = r.unit_part(b(i, c));
    if (!(u == r.one())) {
      // diag(.., u, ..) at position c divides (i, c) by u.
      auto g = identity(r, n), gi = identity(r, n);
      g(c, c) = u;
      gi(c, c) = r.unit_inverse(u);
      apply_step(b, w, SimilarityWitness<E>{g, gi, u});
    }
  }
}

/// Reduce entries (u, w), u >= w, modulo the superdiagonal entry b_{w-1,w}
/// for w = upto, ..., 1 by conjugations with 1 + lambda E_{u,w-1}. Rows whose
/// tails are already zero keep them, and row 1 is untouched.
template <PidRing R>
void size_reduce(const R& r, MatrixOf<R>& b, SimilarityWitness<typename R::Element>& w, std::size_t upto) {
  using E = typename R::Element;
  const std::size_t n = b.rows();
  for (std::size_t c = std::min(upto, n - 1); c >= 1; --c) {
    const E piv = b(c - 1, c);
    if (r.is_zero(piv)) continue;
    for (std::size_t u = c; u < n; ++u) {
      E q = r.divmod(b(u, c), piv).first;
      if (r.is_zero(q)) continue;
      apply_step(b, w, elementary_witness(r, n, u, c - 1, E(r.zero() - q)));
    }
  }
}

/// Row u of the result has off-diagonal entries (r, 0, ..., 0) with r at
/// column 2 when u = 1 and at column 1 otherwise (1-based), r a unit-normal
/// generator of the ideal of the off-diagonal entries of row u.
template <PidRing R>
Reduced<typename R::Element> row_reduce(const R& r, const MatrixOf<R>& a, std::size_t u) {
  const std::size_t n = a.rows();
  if (n < 3) throw PreconditionError("row_reduce needs n >= 3");
  if (u >= n) throw PreconditionError("row index out of range");
  auto w = identity_witness(r, n);
  auto b = a;
  if (u == 0) {
    reduce_row_tail(r, b, w, 0);
    return {b, w};
  }
  // New index 0 <- u, 1 <- 0, u <- 1 (a transposition when u = 1).
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  perm[0] = u;
  perm[1] = 0;
  if (u >= 2) perm[u] = 1;
  auto p = permutation_witness(r, perm);
  apply_step(b, w, p);
  reduce_row_tail(r, b, w, 0);
  apply_step(b, w, invert(r, p));
  return {b, w};
}

/// Mirror image of row_reduce for column v: the off-diagonal entries of
/// column v become r at row 2 when v = 1 and at row 1 otherwise (1-based).
template <PidRing R>
Reduced<typename R::Element> col_reduce(const R& r, const MatrixOf<R>& a, std::size_t v) {
  auto t = row_reduce(r, a.transpose(), v);
  return {t.b.transpose(), transpose_witness(r, t.witness)};
}

}  // namespace pidc
