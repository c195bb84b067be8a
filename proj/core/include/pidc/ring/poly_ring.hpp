#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pidc/ring/factorisation.hpp"

namespace pidc {

/// Dense univariate polynomial over F_p, coefficients low degree first,
/// no trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::uint64_t p) : p_(p) {}
  Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  static Poly constant(std::uint64_t p, std::int64_t c);
  static Poly monomial(std::uint64_t p, std::uint64_t c, std::size_t degree);

  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(std::uint64_t s) const;
  /// Formal derivative.
  Poly derivative() const;
  std::uint64_t eval(std::uint64_t x) const;

 private:
  void trim();

  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

/// F_p[x] as a computable PID. Unit-normal associates are monic.
class PolyRing {
 public:
  using Element = Poly;

  explicit PolyRing(std::uint64_t p);

  std::uint64_t characteristic() const { return p_; }
  Element zero() const { return Poly(p_); }
  Element one() const { return Poly::constant(p_, 1); }
  Element from_int(long v) const { return Poly::constant(p_, v); }
  Element x() const { return Poly::monomial(p_, 1, 1); }

  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool is_unit(const Element& a) const { return a.degree() == 0; }
  Element normalize(const Element& a) const;
  Element unit_part(const Element& a) const;
  Element unit_inverse(const Element& u) const;

  std::pair<Element, Element> divmod(const Element& a, const Element& b) const;
  Element rem(const Element& a, const Element& b) const { return divmod(a, b).second; }
  bool divides(const Element& d, const Element& a) const;
  Element exact_div(const Element& a, const Element& d) const;

  Bezout<Element> egcd(const Element& a, const Element& b) const;
  Element gcd(const Element& a, const Element& b) const;
  Factorisation<Element> factor(const Element& a) const;
  bool is_irreducible(const Element& a) const;

  /// a^e mod m, exponent given as a big integer.
  Element powmod(const Element& a, const mpz_class& e, const Element& m) const;

  mpz_class residue_count(const Element& prime) const;
  /// k-th canonical residue: the polynomial whose coefficients are the base-p digits of k.
  Element residue_at(const Element& prime, const mpz_class& k) const;
  /// Fixed enumeration of R by base-p digits.
  Element element_at(const mpz_class& k) const;
  std::vector<Element> primes_of_index(const mpz_class& k) const;

  /// Degree, then coefficients from the top down.
  bool less(const Element& a, const Element& b) const;
  std::size_t height(const Element& a) const {
    return a.is_zero() ? 0 : static_cast<std::size_t>(a.degree()) + 1;
  }

  std::string to_string(const Element& a) const;
  std::string name() const { return "F" + std::to_string(p_) + "[x]"; }
  bool operator==(const PolyRing& o) const { return p_ == o.p_; }

 private:
  std::vector<std::pair<Element, unsigned>> squarefree(const Element& f) const;
  std::vector<std::pair<Element, unsigned>> distinct_degree(const Element& f) const;
  void equal_degree(const Element& f, unsigned d, std::vector<Element>& out,
                    std::uint64_t& seed) const;

  std::uint64_t p_;
};

}  // namespace pidc
