#pragma once

#include <cstddef>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/ring/residue_field.hpp"
#include "pidc/ring/ring_ops.hpp"

namespace pidc {

/// Left multiplication by 1 + lambda E_uv.
template <class E>
struct ElementaryStep {
  std::size_t u;
  std::size_t v;
  E lambda;
};

/// Steps L_1, ..., L_k over a field with L_k ... L_1 T = 1, for det(T) = 1.
template <class K>
std::vector<ElementaryStep<typename K::Element>> elementary_reduction(const K& k, MatrixOf<K> t) {
  using E = typename K::Element;
  const std::size_t n = t.rows();
  std::vector<ElementaryStep<E>> steps;
  auto apply_step = [&](std::size_t u, std::size_t v, const E& lambda) {
    if (is_zero(lambda)) return;
    for (std::size_t j = 0; j < n; ++j) t(u, j) = t(u, j) + lambda * t(v, j);
    steps.push_back({u, v, lambda});
  };
  for (std::size_t j = 0; j < n; ++j) {
    if (is_zero(t(j, j))) {
      std::size_t i = j + 1;
      while (i < n && is_zero(t(i, j))) ++i;
      if (i == n) throw PreconditionError("target matrix is singular");
      apply_step(j, i, k.one());
    }
    E piv = inv(t(j, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || is_zero(t(i, j))) continue;
      apply_step(i, j, -(t(i, j) * piv));
    }
  }
  // Diagonal with determinant 1: move each entry down one slot with diag(b, 1/b) blocks,
  // diag(b, 1/b) = w(b) w(-1), w(b) = (1 + bE_12)(1 - b^-1 E_21)(1 + bE_12).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    E b = inv(t(i, i));
    if (b == k.one()) continue;
    E m1 = -k.one();
    apply_step(i, i + 1, m1);
    apply_step(i + 1, i, k.one());
    apply_step(i, i + 1, m1);
    apply_step(i, i + 1, b);
    apply_step(i + 1, i, -inv(b));
    apply_step(i, i + 1, b);
  }
  if (t != identity(k, n)) throw PreconditionError("target matrix does not have determinant 1");
  return steps;
}

/// g in SL_n(R) with g == targets[i] modulo primes[i] for every i.
/// Each target is decomposed into elementary matrices over its residue
/// field; every factor is lifted by CRT to a transvection that is trivial
/// modulo the other primes, and the per-prime products are concatenated.
template <PidRing R>
SimilarityWitness<typename R::Element> sl_lift(const R& r, const std::vector<MatrixOf<R>>& targets,
                                               const std::vector<typename R::Element>& primes) {
  using E = typename R::Element;
  if (targets.size() != primes.size()) throw PreconditionError("sl_lift: one target per prime");
  if (targets.empty()) throw DegenerateInput("sl_lift with no primes");
  const std::size_t n = targets[0].rows();
  auto g = identity(r, n);
  auto gi = identity(r, n);
  for (std::size_t t = 0; t < primes.size(); ++t) {
    ResidueField<R> f(r, primes[t]);
    auto target = targets[t].map([&](const E& v) { return f.reduce(v); });
    if (!(det_field(f, target) == f.one())) {
      throw PreconditionError("sl_lift target does not have determinant 1");
    }
    auto steps = elementary_reduction(f, target);
    std::vector<E> residues(primes.size(), r.zero());
    // target = L_1^-1 ... L_k^-1
    for (const auto& s : steps) {
      residues[t] = f.lift(-s.lambda);
      E lam = primes.size() == 1 ? residues[t] : crt(r, residues, primes);
      g = g * elementary(r, n, s.u, s.v, lam);
      gi = elementary(r, n, s.u, s.v, r.zero() - lam) * gi;
    }
  }
  return {g, gi, r.one()};
}

}  // namespace pidc
