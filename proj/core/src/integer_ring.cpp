#include "pidc/ring/integer_ring.hpp"

#include <algorithm>
#include <map>

#include "pidc/errors.hpp"

namespace pidc {
namespace {

constexpr unsigned kTrialBound = 10000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool probably_prime(const Integer& n) {
  // Baillie-PSW plus Miller-Rabin rounds; no known counterexample.
  return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer pollard_brent(const Integer& n, unsigned long c) {
  Integer y = 2, x, ys, q = 1, g = 1, tmp;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](const Integer& v) {
    Integer out = v * v + c;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
    return out;
  };
  const unsigned long limit = 1ul << 26;
  unsigned long steps = 0;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      const unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = f(y);
        tmp = abs(x - y);
        q *= tmp;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      steps += lim;
    }
    r *= 2;
    if (steps > limit) return 0;
  }
  if (g == n) {
    do {
      ys = f(ys);
      tmp = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2;; ++k) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
        std::map<Integer, unsigned> sub;
        factor_into(root, sub);
        for (auto& [p, e] : sub) out[p] += static_cast<unsigned>(e * k);
        return;
      }
    }
  }
  for (unsigned long c = 1;; ++c) {
    Integer d = pollard_brent(n, c);
    if (d != 0) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
    if (c > 64) throw BudgetExceeded("integer factorisation budget exceeded for " + n.get_str());
  }
}

}  // namespace

IntegerRing::Element IntegerRing::unit_inverse(const Element& u) const {
  if (!is_unit(u)) throw PreconditionError("unit_inverse of non-unit " + u.get_str());
  return u;
}

std::pair<IntegerRing::Element, IntegerRing::Element> IntegerRing::divmod(
    const Element& a, const Element& b) const {
  if (sgn(b) == 0) throw DegenerateInput("division by zero");
  Integer m = abs(b);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  Integer q = (a - r) / b;
  return {q, r};
}

bool IntegerRing::divides(const Element& d, const Element& a) const {
  if (sgn(d) == 0) return sgn(a) == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

IntegerRing::Element IntegerRing::exact_div(const Element& a, const Element& d) const {
  if (!divides(d, a)) {
    throw InvariantFailure("inexact division " + a.get_str() + " / " + d.get_str());
  }
  if (sgn(d) == 0) return 0;
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

Bezout<IntegerRing::Element> IntegerRing::egcd(const Element& a, const Element& b) const {
  if (sgn(a) == 0 && sgn(b) == 0) throw DegenerateInput("egcd of (0, 0)");
  Bezout<Element> out;
  mpz_gcdext(out.gcd.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return out;
}

Factorisation<IntegerRing::Element> IntegerRing::factor(const Element& a) const {
  if (sgn(a) == 0) throw DegenerateInput("factor of 0");
  Factorisation<Element> out;
  out.unit = unit_part(a);
  Integer n = abs(a);
  std::map<Integer, unsigned> found;
  for (unsigned p : small_primes()) {
    if (n == 1) break;
    if (Integer(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++found[Integer(p)];
      n /= p;
    }
  }
  if (n > 1) factor_into(n, found);
  for (auto& [p, e] : found) out.factors.push_back({p, e});
  return out;
}

bool IntegerRing::is_irreducible(const Element& a) const {
  Integer n = abs(a);
  if (n < 2) return false;
  return probably_prime(n);
}

IntegerRing::Element IntegerRing::element_at(const Integer& k) const {
  if (k == 0) return 0;
  Integer half = (k + 1) / 2;
  return (k % 2 == 1) ? half : Integer(-half);
}

std::vector<IntegerRing::Element> IntegerRing::primes_of_index(const Integer& k) const {
  if (k < 2) throw PreconditionError("index must be >= 2");
  if (is_irreducible(k)) return {k};
  return {};
}

bool IntegerRing::less(const Element& a, const Element& b) const {
  int c = mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
  if (c != 0) return c < 0;
  return a < b;
}

std::size_t IntegerRing::height(const Element& a) const {
  return sgn(a) == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

}  // namespace pidc
