#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/centralizer.hpp"
#include "pidc/matrix/field_maps.hpp"
#include "pidc/matrix/frobenius.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"

namespace pidc {

/// A vector v whose Krylov matrix (v, Xv, ..., X^{n-1}v) has unit determinant.
template <class E>
struct RegularityCertificate {
  std::vector<E> vector;
  E krylov_det;
};

template <PidRing R>
bool check_certificate(const R& r, const MatrixOf<R>& x,
                       const RegularityCertificate<typename R::Element>& c) {
  auto d = det(r, krylov_matrix(r, x, c.vector));
  return d == c.krylov_det && r.is_unit(d);
}

/// Certificate for v, or NotCertified if the Krylov determinant is not a unit.
template <PidRing R>
RegularityCertificate<typename R::Element> certify(const R& r, const MatrixOf<R>& x,
                                                   const std::vector<typename R::Element>& v) {
  auto d = det(r, krylov_matrix(r, x, v));
  if (!r.is_unit(d)) throw NotCertified("Krylov determinant " + r.to_string(d) + " is not a unit");
  return {v, d};
}

/// With B the Krylov matrix of v, g = B^-1 maps X to the companion-transpose
/// form B^-1 X B (ones on the subdiagonal, coefficients in the last column).
template <PidRing R>
SimilarityWitness<typename R::Element> krylov_witness(const R& r, const MatrixOf<R>& x,
                                                      const std::vector<typename R::Element>& v) {
  auto b = krylov_matrix(r, x, v);
  auto d = det(r, b);
  if (!r.is_unit(d)) throw NotCertified("Krylov determinant " + r.to_string(d) + " is not a unit");
  auto bi = unimodular_inverse(r, b);
  return {bi, b, r.unit_inverse(d)};
}

/// The forced cyclic vector of a Hessenberg matrix with unit off-diagonal:
/// e_n when a_{i,i+1} = 1 and a_ij = 0 for j >= i+2, e_1 for the transposed pattern.
template <PidRing R>
RegularityCertificate<typename R::Element> hessenberg_cyclic_vector(const R& r, const MatrixOf<R>& a) {
  const std::size_t n = a.rows();
  auto pattern = [&](bool upper) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& v = upper ? a(i, j) : a(j, i);
        if (j == i + 1 && !(v == r.one())) return false;
        if (j >= i + 2 && !r.is_zero(v)) return false;
      }
    return true;
  };
  std::vector<typename R::Element> v(n, r.zero());
  if (pattern(true)) {
    v[n - 1] = r.one();
  } else if (pattern(false)) {
    v[0] = r.one();
  } else {
    throw PreconditionError("matrix is not Hessenberg with unit off-diagonal");
  }
  return certify(r, a, v);
}

template <class E>
struct ModPrimeRegularity {
  bool regular = false;
  /// A cyclic vector over R/p (canonical representatives) when regular.
  std::optional<std::vector<E>> cyclic_vector;
};

/// Regularity of X mod p: the minimal polynomial has degree n.
template <PidRing R>
ModPrimeRegularity<typename R::Element> is_regular_mod_prime(const R& r, const MatrixOf<R>& x,
                                                             const typename R::Element& p) {
  ResidueField<R> f(r, p);
  auto xp = reduce_mod(f, x);
  const std::size_t n = x.rows();
  if (min_poly_degree(f, xp) != n) return {};
  auto v = search_vectors(f, n, search_base(f, n), [&](const Vec<Residue<R>>& cand) {
    return rank(f, krylov_matrix(f, xp, cand)) == n;
  });
  if (!v) throw InvariantFailure("regular matrix without a cyclic vector");
  std::vector<typename R::Element> lifted;
  for (const auto& e : *v) lifted.push_back(f.lift(e));
  return {true, lifted};
}

/// Regularity over the field of fractions.
template <PidRing R>
bool is_regular_over_fractions(const R& r, const MatrixOf<R>& x) {
  FractionField<R> f(r);
  return min_poly_degree(f, to_fractions(f, x)) == x.rows();
}

/// Deterministic search for a certificate over R: standard basis vectors, then
/// all 0/1 vectors, then all 0/+-1 vectors. nullopt means "unknown".
template <PidRing R>
std::optional<RegularityCertificate<typename R::Element>> find_cyclic_vector(const R& r,
                                                                             const MatrixOf<R>& x) {
  using E = typename R::Element;
  const std::size_t n = x.rows();
  auto attempt = [&](const std::vector<E>& v) -> std::optional<RegularityCertificate<E>> {
    auto d = det(r, krylov_matrix(r, x, v));
    if (r.is_unit(d)) return RegularityCertificate<E>{v, d};
    return std::nullopt;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<E> v(n, r.zero());
    v[i] = r.one();
    if (auto c = attempt(v)) return c;
  }
  const std::vector<E> digits2{r.zero(), r.one()};
  const std::vector<E> digits3{r.zero(), r.one(), r.zero() - r.one()};
  for (const auto* digits : {&digits2, &digits3}) {
    const std::size_t base = digits->size();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::size_t pos = 0;
      while (pos < n && ++idx[pos] == base) idx[pos++] = 0;
      if (pos == n) break;
      std::vector<E> v(n, r.zero());
      for (std::size_t i = 0; i < n; ++i) v[i] = (*digits)[idx[i]];
      if (auto c = attempt(v)) return c;
    }
  }
  return std::nullopt;
}

/// Basis of the centraliser of X mod p over R/p.
template <PidRing R>
std::vector<MatrixOf<ResidueField<R>>> centralizer_basis_mod_p(const R& r, const MatrixOf<R>& x,
                                                              const typename R::Element& p) {
  ResidueField<R> f(r, p);
  return centralizer_basis(f, reduce_mod(f, x));
}

/// Jordan block J_m(a) with ones on the subdiagonal.
template <class K>
MatrixOf<K> jordan_block(const K& k, std::size_t m, const typename K::Element& a) {
  auto j = scalar_matrix(k, m, a);
  for (std::size_t i = 0; i + 1 < m; ++i) j(i + 1, i) = k.one();
  return j;
}

/// P_n: ones at even diagonal positions 2, 4, ..., 2k and on the second subdiagonal.
template <class K>
MatrixOf<K> pn_matrix(const K& k, std::size_t n) {
  if (n < 2) throw PreconditionError("P_n needs n >= 2");
  auto p = zero_matrix(k, n);
  for (std::size_t i = 1; i < n; i += 2) p(i, i) = k.one();
  for (std::size_t i = 2; i < n; ++i) p(i, i - 2) = k.one();
  return p;
}

/// g with g X g^-1 = Y for two matrices that are regular over R with equal
/// characteristic polynomials, built from their Krylov bases.
template <PidRing R>
SimilarityWitness<typename R::Element> similarity_of_regular(
    const R& r, const MatrixOf<R>& x, const RegularityCertificate<typename R::Element>& cx,
    const MatrixOf<R>& y, const RegularityCertificate<typename R::Element>& cy) {
  auto kx = krylov_matrix(r, x, cx.vector);
  auto ky = krylov_matrix(r, y, cy.vector);
  auto g = ky * unimodular_inverse(r, kx);
  auto gi = kx * unimodular_inverse(r, ky);
  auto w = make_witness(r, g, gi);
  if (w.conjugate(x) != y) throw PreconditionError("matrices are not similar");
  return w;
}

/// g with g P_n g^-1 = J_k(1) (+) J_{n-k}(0), k = floor(n/2).
template <PidRing R>
SimilarityWitness<typename R::Element> pn_jordan_witness(const R& r, std::size_t n) {
  const std::size_t k = n / 2;
  auto p = pn_matrix(r, n);
  auto j = direct_sum(jordan_block(r, k, r.one()), jordan_block(r, n - k, r.zero()), r.zero());
  auto cp = find_cyclic_vector(r, p);
  auto cj = find_cyclic_vector(r, j);
  if (!cp || !cj) throw InvariantFailure("no cyclic vector found for P_n or its Jordan form");
  return similarity_of_regular(r, p, *cp, j, *cj);
}

}  // namespace pidc
