#pragma once

#include <concepts>

#include <gmpxx.h>

namespace pidc {

/// A computable principal ideal domain with Euclidean division, extended gcd,
/// factorisation and finite residue fields.
template <class R>
concept PidRing = requires(const R& r, const typename R::Element& a, const mpz_class& k) {
  { r.zero() } -> std::same_as<typename R::Element>;
  { r.one() } -> std::same_as<typename R::Element>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.is_unit(a) } -> std::convertible_to<bool>;
  { r.normalize(a) } -> std::same_as<typename R::Element>;
  { r.divmod(a, a) };
  { r.egcd(a, a) };
  { r.factor(a) };
  { r.residue_count(a) } -> std::same_as<mpz_class>;
  { r.residue_at(a, k) } -> std::same_as<typename R::Element>;
  { a + a } -> std::convertible_to<typename R::Element>;
  { a * a } -> std::convertible_to<typename R::Element>;
};

}  // namespace pidc
