#pragma once

#include <span>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/ring/concepts.hpp"
#include "pidc/ring/factorisation.hpp"

namespace pidc {

template <PidRing R>
typename R::Element gcd(const R& r, const typename R::Element& a, const typename R::Element& b) {
  if (r.is_zero(a) && r.is_zero(b)) return r.zero();
  return r.normalize(r.egcd(a, b).gcd);
}

template <PidRing R>
bool coprime(const R& r, const typename R::Element& a, const typename R::Element& b) {
  if (r.is_zero(a) && r.is_zero(b)) return false;
  return r.is_unit(r.egcd(a, b).gcd);
}

/// a lies in the maximal ideal (p).
template <PidRing R>
bool in_prime(const R& r, const typename R::Element& a, const typename R::Element& p) {
  return r.divides(p, a);
}

/// Unit-normal generator of the ideal (values); zero iff all values are zero.
template <PidRing R>
typename R::Element ideal_generator(const R& r, std::span<const typename R::Element> values) {
  if (values.empty()) throw DegenerateInput("ideal_generator of an empty sequence");
  auto g = r.zero();
  for (const auto& v : values) {
    g = gcd(r, g, v);
    if (r.is_unit(g)) break;
  }
  return g;
}

template <PidRing R>
typename R::Element ideal_generator(const R& r, const std::vector<typename R::Element>& values) {
  return ideal_generator(r, std::span<const typename R::Element>(values));
}

/// Largest divisor of a (up to units) sharing no prime with b. Requires a != 0.
template <PidRing R>
typename R::Element coprime_part(const R& r, typename R::Element a, const typename R::Element& b) {
  if (r.is_zero(b)) return r.one();
  for (;;) {
    auto g = gcd(r, a, b);
    if (r.is_unit(g)) return r.normalize(a);
    a = r.exact_div(a, g);
  }
}

/// The r with r == residues[i] mod moduli[i], reduced modulo the product.
template <PidRing R>
typename R::Element crt(const R& r, std::span<const typename R::Element> residues,
                        std::span<const typename R::Element> moduli) {
  if (residues.size() != moduli.size() || moduli.empty()) {
    throw DegenerateInput("crt needs equally many residues and moduli (at least one)");
  }
  auto x = r.rem(residues[0], moduli[0]);
  auto m = r.normalize(moduli[0]);
  if (r.is_zero(m)) throw PreconditionError("crt modulus is zero");
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    const auto& mi = moduli[i];
    if (r.is_zero(mi)) throw PreconditionError("crt modulus is zero");
    auto bz = r.egcd(m, mi);
    if (!r.is_unit(bz.gcd)) throw PreconditionError("crt moduli are not pairwise coprime");
    auto ginv = r.unit_inverse(bz.gcd);
    // bz.s * m == 1 mod mi after scaling by the unit inverse.
    typename R::Element step = (residues[i] - x) * bz.s * ginv;
    typename R::Element next = m * r.normalize(mi);
    x = r.rem(x + m * step, next);
    m = next;
  }
  return x;
}

template <PidRing R>
typename R::Element crt(const R& r, const std::vector<typename R::Element>& residues,
                        const std::vector<typename R::Element>& moduli) {
  return crt(r, std::span<const typename R::Element>(residues),
             std::span<const typename R::Element>(moduli));
}

namespace detail {
template <PidRing R>
typename R::Element avoidance_product(const R& r, const typename R::Element& a,
                                      std::span<const typename R::Element> primes) {
  auto x = r.one();
  bool any = false;
  for (const auto& p : primes) {
    if (!in_prime(r, a, p)) {
      x = x * p;
      any = true;
    }
  }
  return any ? x : r.one();
}
}  // namespace detail

/// x with a + b x outside every prime of S: the product of the primes of S not containing a.
template <PidRing R>
typename R::Element prime_avoidance(const R& r, const typename R::Element& a,
                                    const typename R::Element& b,
                                    std::span<const typename R::Element> primes) {
  if (!coprime(r, a, b)) throw PreconditionError("prime_avoidance requires (a, b) = (1)");
  return detail::avoidance_product(r, a, primes);
}

template <PidRing R>
typename R::Element prime_avoidance(const R& r, const typename R::Element& a,
                                    const typename R::Element& b,
                                    const std::vector<typename R::Element>& primes) {
  return prime_avoidance(r, a, b, std::span<const typename R::Element>(primes));
}

/// t outside (p), inside every prime of S, with alpha t + beta outside (p).
template <PidRing R>
typename R::Element avoid_with_vanishing(const R& r, const typename R::Element& alpha,
                                         const typename R::Element& beta,
                                         const typename R::Element& p,
                                         std::span<const typename R::Element> primes) {
  if (!coprime(r, alpha, beta)) {
    throw PreconditionError("avoid_with_vanishing requires (alpha, beta) = (1)");
  }
  if (r.residue_count(p) < 3) {
    throw PreconditionError("avoid_with_vanishing requires a residue field with at least 3 elements");
  }
  auto s = r.one();
  for (const auto& q : primes) {
    if (r.normalize(q) == r.normalize(p)) throw PreconditionError("p must not lie in S");
    s = s * q;
  }
  // Residues 1 and 2 of the canonical enumeration are distinct and nonzero.
  for (int k = 1; k <= 2; ++k) {
    typename R::Element t = r.residue_at(p, k) * s;
    if (!in_prime(r, alpha * t + beta, p)) return t;
  }
  throw InvariantFailure("avoid_with_vanishing: both candidates failed");
}

template <PidRing R>
typename R::Element avoid_with_vanishing(const R& r, const typename R::Element& alpha,
                                         const typename R::Element& beta,
                                         const typename R::Element& p,
                                         const std::vector<typename R::Element>& primes) {
  return avoid_with_vanishing(r, alpha, beta, p, std::span<const typename R::Element>(primes));
}

/// x with (a + c x, b - a x) = (1), given (a, b, c) = (1), (a, b) != (1), (a, c) != (1).
template <PidRing R>
typename R::Element coprimify(const R& r, const typename R::Element& a,
                              const typename R::Element& b, const typename R::Element& c) {
  std::vector<typename R::Element> abc{a, b, c};
  if (!r.is_unit(ideal_generator(r, abc))) throw PreconditionError("coprimify requires (a, b, c) = (1)");
  if (coprime(r, a, b)) throw PreconditionError("coprimify requires (a, b) != (1)");
  if (coprime(r, a, c)) throw PreconditionError("coprimify requires (a, c) != (1)");
  // a(a + cx) + c(b - ax) = a^2 + bc, the resultant of the two linear forms in x.
  typename R::Element D = a * a + b * c;
  if (r.is_zero(D)) {
    // The two forms are proportional; scan R in its fixed enumeration.
    for (long k = 0; k < 100000; ++k) {
      auto x = r.element_at(k);
      if (coprime(r, a + c * x, b - a * x)) return x;
    }
    throw BudgetExceeded("coprimify: no x found with a^2 + bc = 0");
  }
  auto primes = r.factor(D).primes();
  // Primes dividing both a and c cannot divide b, so they never divide b - ax.
  auto x = detail::avoidance_product(r, a, std::span<const typename R::Element>(primes));
  if (!coprime(r, a + c * x, b - a * x)) throw InvariantFailure("coprimify postcondition failed");
  return x;
}

}  // namespace pidc
