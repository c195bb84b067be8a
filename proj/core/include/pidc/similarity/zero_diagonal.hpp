#pragma once

#include <cstddef>
#include <string>

#include "pidc/errors.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/ring/ring_ops.hpp"
#include "pidc/similarity/lr_form.hpp"
#include "pidc/similarity/row_column.hpp"

namespace pidc {

namespace detail {

template <PidRing R>
typename R::Element some_prime_not_dividing(const R& r, const typename R::Element& a) {
  for (std::size_t k = 0; k < 100000; ++k) {
    auto x = r.element_at(k);
    if (r.is_zero(x) || r.is_unit(x)) continue;
    for (const auto& p : r.factor(x).primes()) {
      if (!r.divides(p, a)) return p;
    }
  }
  throw BudgetExceeded("no prime found outside the given element");
}

// Trace zero, I(A) = (1). Zero the diagonal by the inductive scheme.
template <PidRing R>
SimilarityWitness<typename R::Element> zero_diagonal_unit(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  if (n == 2) {
    if (r.is_unit(a(0, 1))) {
      return elementary_witness(r, 2, 1, 0, E(a(0, 0) * r.unit_inverse(a(0, 1))));
    }
    if (r.is_unit(a(1, 0))) {
      return elementary_witness(r, 2, 0, 1, E(r.zero() - a(0, 0) * r.unit_inverse(a(1, 0))));
    }
    // Look for a primitive v with (v, Av / content(Av)) a basis.
    for (std::size_t i = 0; i < 400; ++i) {
      for (std::size_t j = 0; j < 400; ++j) {
        E v0 = r.element_at(i), v1 = r.element_at(j);
        if (!coprime(r, v0, v1)) continue;
        E w0 = a(0, 0) * v0 + a(0, 1) * v1;
        E w1 = a(1, 0) * v0 + a(1, 1) * v1;
        if (r.is_zero(w0) && r.is_zero(w1)) continue;
        E c = r.egcd(w0, w1).gcd;
        w0 = r.exact_div(w0, c);
        w1 = r.exact_div(w1, c);
        E d = v0 * w1 - v1 * w0;
        if (!r.is_unit(d)) continue;
        E di = r.unit_inverse(d);
        MatrixOf<R> gi(2, 2, r.zero());
        gi(0, 0) = v0;
        gi(1, 0) = v1;
        gi(0, 1) = w0;
        gi(1, 1) = w1;
        MatrixOf<R> g(2, 2, r.zero());
        g(0, 0) = w1 * di;
        g(0, 1) = E(r.zero() - w0) * di;
        g(1, 0) = E(r.zero() - v1) * di;
        g(1, 1) = v0 * di;
        return {g, gi, di};
      }
    }
    throw PreconditionError("no zero-diagonal conjugate found for this 2x2 matrix within the search bound");
  }

  auto lr = lr_form(r, a);
  auto w = lr.witness;
  auto b = lr.b;
  if (!r.is_unit(b(0, 1))) throw InvariantFailure("unit pivot expected");
  E u = r.unit_inverse(b(0, 1));
  apply_step(b, w, elementary_witness(r, n, n - 1, 0, E(E(r.one() - b(n - 1, 1)) * u)));
  apply_step(b, w, elementary_witness(r, n, 1, 0, E(b(0, 0) * u)));
  if (!r.is_zero(b(0, 0)) || !(b(n - 1, 1) == r.one())) {
    throw InvariantFailure("zero-diagonal step left (1,1) or (n,2) wrong");
  }
  auto inner = zero_diagonal_unit(r, b.block(1, 1, n - 1, n - 1));
  MatrixOf<R> g = identity(r, n), gi = identity(r, n);
  g.set_block(1, 1, inner.g);
  gi.set_block(1, 1, inner.g_inverse);
  apply_step(b, w, SimilarityWitness<E>{g, gi, inner.det});
  return w;
}

}  // namespace detail

/// B similar to A with zero diagonal. A must have trace zero and A/content(A)
/// must be non-scalar modulo every prime; otherwise NotApplicable names a
/// prime where it is scalar.
template <PidRing R>
Reduced<typename R::Element> zero_diagonal_form(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  if (!a.square() || n < 2) throw PreconditionError("zero_diagonal_form needs a square matrix with n >= 2");
  if (!r.is_zero(a.trace())) throw PreconditionError("zero_diagonal_form needs trace zero");
  bool zero_diag = true;
  for (std::size_t i = 0; i < n; ++i) zero_diag = zero_diag && r.is_zero(a(i, i));
  if (zero_diag) return {a, identity_witness(r, n)};

  E m = content(r, a);
  auto a1 = exact_div(r, a, m);
  E g = scalar_defect_ideal(r, a1);
  if (!r.is_unit(g)) {
    E p = r.is_zero(g) ? detail::some_prime_not_dividing(r, a1(0, 0)) : r.factor(g).primes().front();
    throw NotApplicable("matrix is a nonzero scalar modulo " + r.to_string(p), r.to_string(p));
  }
  auto w = detail::zero_diagonal_unit(r, a1);
  return {w.conjugate(a), w};
}

}  // namespace pidc
