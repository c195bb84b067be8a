#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/centralizer.hpp"
#include "pidc/matrix/field_maps.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/ring/fraction_field.hpp"
#include "pidc/ring/residue_field.hpp"

namespace pidc {

/// A = XY - YX, with the branch decisions and scalars that produced it.
template <class E>
struct CommutatorWitness {
  Matrix<E> x;
  Matrix<E> y;
  std::vector<std::pair<std::string, std::string>> log;

  bool verifies(const Matrix<E>& a) const { return commutator(x, y) == a; }
};

template <class E>
struct CriterionReport {
  std::vector<E> traces;
  bool satisfied = false;
};

/// Tr(X^r A) for r = 0..n-1.
template <class K>
CriterionReport<typename K::Element> criterion_check(const K& k, const MatrixOf<K>& x, const MatrixOf<K>& a) {
  if (!x.square() || x.rows() != a.rows() || !a.square()) throw PreconditionError("criterion_check: shape mismatch");
  CriterionReport<typename K::Element> rep;
  rep.satisfied = true;
  auto pw = identity(k, x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    typename K::Element t = (pw * a).trace();
    if (!(t == k.zero())) rep.satisfied = false;
    rep.traces.push_back(t);
    pw = pw * x;
  }
  return rep;
}

/// Rank of the linear system Tr(X^r A) = 0, r = 0..n-1, in the n^2 entries
/// of A. Equals n exactly when X is regular.
template <class K>
std::size_t criterion_rank(const K& k, const MatrixOf<K>& x) {
  const std::size_t n = x.rows();
  MatrixOf<K> sys(n, n * n, k.zero());
  auto pw = identity(k, n);
  for (std::size_t r = 0; r < n; ++r) {
    // Tr(P A) = sum_ij P_ji A_ij
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sys(r, i * n + j) = pw(j, i);
    pw = pw * x;
  }
  return rank(k, sys);
}

namespace detail {

// Given [X, C] = d A over R, strip primes of d by writing C = f(X) mod p.
// Primes are taken from `candidates` first; any cofactor left over is factored.
template <PidRing R>
std::pair<typename R::Element, MatrixOf<R>> strip_denominator(const R& r, const MatrixOf<R>& x,
                                                              typename R::Element d, MatrixOf<R> c,
                                                              const std::vector<typename R::Element>& candidates = {}) {
  using E = typename R::Element;
  auto next_prime = [&]() -> E {
    for (const auto& p : candidates)
      if (r.divides(p, d)) return p;
    return r.factor(d).primes().front();
  };
  while (!r.is_unit(d)) {
    E p = next_prime();
    ResidueField<R> f(r, p);
    Vec<Residue<R>> poly;
    try {
      poly = express_as_polynomial(f, reduce_mod(f, c), reduce_mod(f, x));
    } catch (const NotInCentralizer&) {
      throw CriterionViolation("X is not regular modulo " + r.to_string(p) +
                               "; cannot clear the denominator there");
    }
    Vec<E> lifted;
    for (const auto& v : poly) lifted.push_back(f.lift(v));
    c = exact_div(r, c - eval_polynomial(r, lifted, x), p);
    d = r.exact_div(d, p);
  }
  return {d, std::move(c)};
}

}  // namespace detail

/// Q with [X, Q] = A, given a basis matrix P with P^-1 X P in companion-transpose
/// form (ones on the subdiagonal). Columns of Q' = P^-1 Q P follow from
/// Q'_{j+1} = C Q'_j - B_j with Q'_0 = 0; the last column is then checked.
template <class K>
MatrixOf<K> solve_via_basis(const K& k, const MatrixOf<K>& x, const MatrixOf<K>& p, const MatrixOf<K>& p_inv,
                            const MatrixOf<K>& a) {
  const std::size_t n = x.rows();
  auto c = p_inv * x * p;
  auto b = p_inv * a * p;
  MatrixOf<K> q(n, n, k.zero());
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      typename K::Element v = k.zero() - b(i, j);
      for (std::size_t l = 0; l < n; ++l) v = v + c(i, l) * q(l, j);
      q(i, j + 1) = v;
    }
  }
  if (c * q - q * c != b) throw CriterionViolation("A is not of the form [X, Q]");
  return p * q * p_inv;
}

namespace detail {

template <PidRing R>
struct KrylovChoice {
  std::vector<typename R::Element> v;
  typename R::Element det;
};

// Cyclic vector candidate with the smallest nonzero Krylov determinant among
// standard basis vectors and sums of two of them.
template <PidRing R>
std::optional<KrylovChoice<R>> best_krylov_vector(const R& r, const MatrixOf<R>& x) {
  const std::size_t n = x.rows();
  std::optional<KrylovChoice<R>> best;
  auto consider = [&](std::vector<typename R::Element> v) {
    typename R::Element d = det(r, krylov_matrix(r, x, v));
    if (r.is_zero(d)) return false;
    if (!best || r.height(d) < r.height(best->det)) best = KrylovChoice<R>{std::move(v), d};
    return r.is_unit(d);
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<typename R::Element> v(n, r.zero());
    v[i] = r.one();
    if (consider(v)) return best;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<typename R::Element> v(n, r.zero());
      v[i] = r.one();
      v[j] = r.one();
      if (consider(v)) return best;
    }
  return best;
}

template <PidRing R>
struct FractionSolution {
  typename R::Element d;            // [X, C] = d A
  MatrixOf<R> c;
  std::vector<typename R::Element> primes;  // every prime of d is among these
};

// Solve [X, Q] = A over the fraction field through the Krylov basis of v.
// Denominators divide a power of the Krylov determinant, whose primes are
// `primes` when given and factored otherwise.
template <PidRing R>
FractionSolution<R> krylov_fraction_solve(const R& r, const MatrixOf<R>& x, const MatrixOf<R>& a,
                                          const std::vector<typename R::Element>& v,
                                          std::optional<std::vector<typename R::Element>> primes = std::nullopt) {
  FractionField<R> f(r);
  auto kb = krylov_matrix(r, x, v);
  typename R::Element kd = det(r, kb);
  if (r.is_zero(kd)) throw PreconditionError("v is not a cyclic vector over the fraction field");
  if (r.is_unit(kd)) return {r.one(), solve_via_basis(r, x, kb, unimodular_inverse(r, kb), a), {}};
  auto kf = to_fractions(f, kb);
  auto m = solve_via_basis(f, to_fractions(f, x), kf, inverse(f, kf), to_fractions(f, a));
  auto [d, c] = clear_fractions(r, m);
  if (!primes) primes = r.factor(kd).primes();
  return {d, c, *primes};
}

template <PidRing R>
FractionSolution<R> fraction_solve(const R& r, const MatrixOf<R>& x, const MatrixOf<R>& a) {
  auto choice = best_krylov_vector(r, x);
  if (choice) return krylov_fraction_solve(r, x, a, choice->v);
  FractionField<R> f(r);
  auto m = solve_commutator_equation(f, to_fractions(f, x), to_fractions(f, a));
  auto [d, c] = clear_fractions(r, m);
  return {d, c, {}};
}

}  // namespace detail

/// Y over R with [X, Y] = [X, M] for M over the field of fractions. X must be
/// regular modulo every prime of the denominator of M.
template <PidRing R>
MatrixOf<R> clear_denominators(const R& r, const MatrixOf<R>& x, const MatrixOf<FractionField<R>>& m) {
  auto [d, c] = clear_fractions(r, m);
  auto [u, y] = detail::strip_denominator(r, x, d, std::move(c));
  return r.unit_inverse(u) * y;
}

/// Y over R with [X, Y] = A, for X regular modulo every prime that shows up
/// in the denominators of a solution over the fraction field.
template <PidRing R>
MatrixOf<R> integral_solve(const R& r, const MatrixOf<R>& x, const MatrixOf<R>& a) {
  auto sol = detail::fraction_solve(r, x, a);
  auto [u, y] = detail::strip_denominator(r, x, sol.d, std::move(sol.c), sol.primes);
  return r.unit_inverse(u) * y;
}

}  // namespace pidc
