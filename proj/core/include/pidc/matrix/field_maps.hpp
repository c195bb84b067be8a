#pragma once

#include <optional>

#include "pidc/errors.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/ring/fraction_field.hpp"
#include "pidc/ring/residue_field.hpp"

namespace pidc {

// Moving matrices between a PID, its field of fractions and its residue fields.

template <PidRing R>
MatrixOf<FractionField<R>> to_fractions(const FractionField<R>& f, const MatrixOf<R>& a) {
  return a.map([&](const typename R::Element& v) { return f.embed(v); });
}

template <PidRing R>
MatrixOf<ResidueField<R>> reduce_mod(const ResidueField<R>& f, const MatrixOf<R>& a) {
  return a.map([&](const typename R::Element& v) { return f.reduce(v); });
}

/// Canonical representatives of a matrix over R/p.
template <PidRing R>
MatrixOf<R> lift_residues(const ResidueField<R>& f, const MatrixOf<ResidueField<R>>& a) {
  return a.map([&](const Residue<R>& v) { return f.lift(v); });
}

/// The matrix over R when every entry is integral, else nullopt.
template <PidRing R>
std::optional<MatrixOf<R>> try_integral(const MatrixOf<FractionField<R>>& a) {
  for (const auto& v : a.data())
    if (!v.is_integral()) return std::nullopt;
  return a.map([](const Fraction<R>& v) {
    return typename R::Element(v.num() * v.ring().unit_inverse(v.den()));
  });
}

/// Common denominator d (unit-normal) and C = dM over R.
template <PidRing R>
std::pair<typename R::Element, MatrixOf<R>> clear_fractions(const R& r,
                                                            const MatrixOf<FractionField<R>>& m) {
  using E = typename R::Element;
  E d = r.one();
  for (const auto& v : m.data()) {
    E g = gcd(r, d, v.den());
    d = d * r.exact_div(v.den(), g);
  }
  d = r.normalize(d);
  auto c = m.map([&](const Fraction<R>& v) { return E(v.num() * r.exact_div(d, v.den())); });
  return {d, c};
}

/// Inverse over R of a matrix with unit determinant.
template <PidRing R>
MatrixOf<R> unimodular_inverse(const R& r, const MatrixOf<R>& a) {
  FractionField<R> f(r);
  auto inv = try_inverse(f, to_fractions(f, a));
  if (!inv) throw PreconditionError("matrix is singular");
  auto out = try_integral<R>(*inv);
  if (!out) throw PreconditionError("matrix is not invertible over the ring");
  return *out;
}

}  // namespace pidc
