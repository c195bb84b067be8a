#pragma once

#include <vector>

namespace pidc {

template <class E>
struct PrimePower {
  E prime;
  unsigned exponent = 1;
};

/// unit * prod(prime^exponent); primes unit-normal, pairwise non-associate and
/// sorted by the ring's total order.
template <class E>
struct Factorisation {
  E unit;
  std::vector<PrimePower<E>> factors;

  std::vector<E> primes() const {
    std::vector<E> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
  }

  unsigned total_multiplicity() const {
    unsigned s = 0;
    for (const auto& f : factors) s += f.exponent;
    return s;
  }
};

template <class E>
struct Bezout {
  E gcd;
  E s;
  E t;
};

}  // namespace pidc
