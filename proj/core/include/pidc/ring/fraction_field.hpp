#pragma once

#include <memory>
#include <string>

#include "pidc/errors.hpp"
#include "pidc/ring/concepts.hpp"

namespace pidc {

/// Element of the field of fractions of R, kept in lowest terms with a
/// unit-normal denominator.
template <class R>
class Fraction {
 public:
  using Element = typename R::Element;

  Fraction(std::shared_ptr<const R> ring, Element num, Element den)
      : ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  const Element& num() const { return num_; }
  const Element& den() const { return den_; }
  const R& ring() const { return *ring_; }
  bool is_zero() const { return ring_->is_zero(num_); }
  bool is_integral() const { return ring_->is_unit(den_); }

  Fraction& operator+=(const Fraction& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
  }
  Fraction& operator-=(const Fraction& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
  }
  Fraction& operator*=(const Fraction& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
  }
  Fraction operator-() const { return Fraction(ring_, ring_->zero() - num_, den_); }
  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend Fraction inv(const Fraction& a) {
    if (a.is_zero()) throw DegenerateInput("inverse of zero fraction");
    return Fraction(a.ring_, a.den_, a.num_);
  }
  friend bool is_zero(const Fraction& a) { return a.is_zero(); }

 private:
  void reduce() {
    const R& r = *ring_;
    if (r.is_zero(den_)) throw DegenerateInput("zero denominator");
    if (r.is_zero(num_)) {
      den_ = r.one();
      return;
    }
    auto g = r.egcd(num_, den_).gcd;
    if (!r.is_unit(g)) {
      num_ = r.exact_div(num_, g);
      den_ = r.exact_div(den_, g);
    }
    auto u = r.unit_part(den_);
    if (u != r.one()) {
      auto ui = r.unit_inverse(u);
      num_ = num_ * ui;
      den_ = den_ * ui;
    }
  }

  std::shared_ptr<const R> ring_;
  Element num_;
  Element den_;
};

/// The field of fractions F of a PID R.
template <class R>
class FractionField {
 public:
  using Ring = R;
  using Element = Fraction<R>;

  explicit FractionField(const R& ring) : ring_(std::make_shared<const R>(ring)) {}

  const R& ring() const { return *ring_; }
  Element zero() const { return Element(ring_, ring_->zero(), ring_->one()); }
  Element one() const { return Element(ring_, ring_->one(), ring_->one()); }
  Element embed(const typename R::Element& a) const { return Element(ring_, a, ring_->one()); }
  Element make(const typename R::Element& n, const typename R::Element& d) const {
    return Element(ring_, n, d);
  }
  /// Infinite field; 0 is the size marker for "unbounded".
  mpz_class size() const { return 0; }
  /// k-th element of a fixed injective enumeration (the ring's own enumeration).
  Element element(const mpz_class& k) const { return embed(ring_->element_at(k)); }
  std::string to_string(const Element& a) const {
    if (ring_->is_unit(a.den())) return ring_->to_string(a.num());
    return "(" + ring_->to_string(a.num()) + ")/(" + ring_->to_string(a.den()) + ")";
  }

 private:
  std::shared_ptr<const R> ring_;
};

}  // namespace pidc
