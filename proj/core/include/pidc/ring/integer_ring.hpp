#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "pidc/ring/factorisation.hpp"

namespace pidc {

using Integer = mpz_class;

/// The integers as a computable PID. Unit-normal associates are non-negative.
class IntegerRing {
 public:
  using Element = Integer;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long v) const { return v; }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_unit(const Element& a) const { return abs(a) == 1; }
  Element normalize(const Element& a) const { return abs(a); }
  Element unit_part(const Element& a) const { return sgn(a) < 0 ? -1 : 1; }
  Element unit_inverse(const Element& u) const;

  /// Euclidean division with remainder in [0, |b|).
  std::pair<Element, Element> divmod(const Element& a, const Element& b) const;
  Element rem(const Element& a, const Element& b) const { return divmod(a, b).second; }
  bool divides(const Element& d, const Element& a) const;
  /// Throws InvariantFailure if d does not divide a.
  Element exact_div(const Element& a, const Element& d) const;

  Bezout<Element> egcd(const Element& a, const Element& b) const;
  Factorisation<Element> factor(const Element& a) const;
  bool is_irreducible(const Element& a) const;

  /// |R/(p)|.
  Integer residue_count(const Element& p) const { return abs(p); }
  /// k-th canonical residue modulo p, for 0 <= k < |p|.
  Element residue_at(const Element& /*p*/, const Integer& k) const { return k; }
  /// Fixed enumeration of R: 0, 1, -1, 2, -2, ...
  Element element_at(const Integer& k) const;
  std::vector<Element> primes_of_index(const Integer& k) const;

  /// Total order used to sort prime factors: magnitude, then sign.
  bool less(const Element& a, const Element& b) const;
  /// Size measure in bits, for growth diagnostics.
  std::size_t height(const Element& a) const;

  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string name() const { return "Z"; }
  bool operator==(const IntegerRing&) const { return true; }
};

}  // namespace pidc
