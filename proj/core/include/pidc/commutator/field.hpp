#pragma once

#include <cstddef>

#include "pidc/commutator/criterion.hpp"
#include "pidc/errors.hpp"
#include "pidc/matrix/centralizer.hpp"
#include "pidc/matrix/frobenius.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/regularity/regularity.hpp"

namespace pidc {

/// A = [X, Y] over a field with X conjugate to P_n (J_n(0) when A is scalar).
template <class K>
CommutatorWitness<typename K::Element> field_commutator(const K& k, const MatrixOf<K>& a) {
  using E = typename K::Element;
  const std::size_t n = a.rows();
  if (!a.square()) throw PreconditionError("field_commutator needs a square matrix");
  if (!(a.trace() == k.zero())) throw PreconditionError("field_commutator needs trace zero");
  if (n == 1) return {a, a, {{"branch", "n=1"}}};
  if (is_scalar(k, a)) {
    auto x = jordan_block(k, n, k.zero());
    return {x, solve_commutator_equation(k, x, a), {{"branch", "scalar"}}};
  }
  // The largest companion block comes first, so b12 = 1 and b_ij = 0 for j >= i + 2.
  auto fr = frobenius_form(k, a);
  auto w = fr.witness;
  auto b = fr.form;
  E c = even_diagonal_sum(k, b);
  if (!(c == k.zero())) {
    // (1 - cE21) B (1 + cE21) lowers b22 by c b12 = c.
    auto z = elementary_witness(k, n, 1, 0, E(k.zero() - c));
    b = z.conjugate(b);
    w = w.then(z);
  }
  if (!(even_diagonal_sum(k, b) == k.zero())) throw InvariantFailure("c(B) did not vanish");
  auto p = pn_matrix(k, n);
  auto y = solve_commutator_equation(k, p, b);
  return {w.unconjugate(p), w.unconjugate(y), {{"branch", "frobenius"}}};
}

}  // namespace pidc
