#pragma once

#include <string>

#include "pidc/errors.hpp"
#include "pidc/matrix/matrix.hpp"
#include "pidc/matrix/ring_matrix.hpp"

namespace pidc {

/// An invertible conjugator g with its exact inverse; asserts g A g^-1 = B
/// for the pair of matrices it was produced with.
template <class E>
struct SimilarityWitness {
  Matrix<E> g;
  Matrix<E> g_inverse;
  E det;

  Matrix<E> conjugate(const Matrix<E>& a) const { return g * a * g_inverse; }
  Matrix<E> unconjugate(const Matrix<E>& b) const { return g_inverse * b * g; }

  /// The witness for applying *this first and then `later`.
  SimilarityWitness then(const SimilarityWitness& later) const {
    return {later.g * g, g_inverse * later.g_inverse, later.det * det};
  }
  /// g (+) 1 embedding into a larger size, placing g in the top-left block.
  SimilarityWitness padded(std::size_t n, const E& zero, const E& one) const {
    auto big = Matrix<E>::identity(n, zero, one);
    auto bigi = big;
    big.set_block(0, 0, g);
    bigi.set_block(0, 0, g_inverse);
    return {big, bigi, det};
  }
};

template <class K>
SimilarityWitness<typename K::Element> identity_witness(const K& k, std::size_t n) {
  return {identity(k, n), identity(k, n), k.one()};
}

/// Witness from a conjugator and its known inverse; the determinant is recomputed.
template <PidRing R>
SimilarityWitness<typename R::Element> make_witness(const R& r, MatrixOf<R> g, MatrixOf<R> gi) {
  typename R::Element d = det(r, g);
  if (!r.is_unit(d)) throw WitnessInvalid("conjugator determinant is not a unit");
  if (g * gi != identity(r, g.rows())) throw WitnessInvalid("supplied inverse is not an inverse");
  return {std::move(g), std::move(gi), d};
}

/// Conjugation by 1 + lambda E_uv.
template <class K>
SimilarityWitness<typename K::Element> elementary_witness(const K& k, std::size_t n, std::size_t u,
                                                          std::size_t v,
                                                          const typename K::Element& lambda) {
  return {elementary(k, n, u, v, lambda), elementary(k, n, u, v, k.zero() - lambda), k.one()};
}

/// Conjugation by the permutation matrix with (P A P^-1)(i, j) = A(perm[i], perm[j]).
template <class K>
SimilarityWitness<typename K::Element> permutation_witness(const K& k,
                                                           const std::vector<std::size_t>& perm) {
  auto p = permutation_matrix(k, perm);
  // det is the sign of the permutation.
  std::vector<bool> seen(perm.size(), false);
  bool odd = false;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) odd = !odd;
  }
  return {p, p.transpose(), odd ? k.zero() - k.one() : k.one()};
}

/// Conjugation by diag(1, .., u, .., 1) for a unit u at position i.
template <PidRing R>
SimilarityWitness<typename R::Element> diagonal_unit_witness(const R& r, std::size_t n, std::size_t i,
                                                             const typename R::Element& u) {
  auto g = identity(r, n);
  auto gi = identity(r, n);
  g(i, i) = u;
  gi(i, i) = r.unit_inverse(u);
  return {g, gi, u};
}

template <PidRing R>
SimilarityWitness<typename R::Element> invert(const R& r, const SimilarityWitness<typename R::Element>& w) {
  return {w.g_inverse, w.g, r.unit_inverse(w.det)};
}

/// For B' = g A^T g^-1 the witness h = g^-T satisfies h A h^-1 = B'^T.
template <PidRing R>
SimilarityWitness<typename R::Element> transpose_witness(const R& r,
                                                         const SimilarityWitness<typename R::Element>& w) {
  return {w.g_inverse.transpose(), w.g.transpose(), r.unit_inverse(w.det)};
}

/// Exact check: det unit, g g^-1 = 1, g A g^-1 = B. Returns an empty string on success.
template <PidRing R>
std::string check_witness(const R& r, const SimilarityWitness<typename R::Element>& w,
                          const MatrixOf<R>& a, const MatrixOf<R>& b) {
  const std::size_t n = a.rows();
  if (w.g.rows() != n || w.g_inverse.rows() != n) return "witness has the wrong size";
  if (w.g * w.g_inverse != identity(r, n)) return "g * gInverse != 1";
  auto d = det(r, w.g);
  if (!r.is_unit(d)) return "det(g) is not a unit";
  if (!(d == w.det)) return "recorded determinant differs from det(g)";
  if (w.g * a != b * w.g) return "g A g^-1 != B";
  return {};
}

}  // namespace pidc
