#pragma once

#include <memory>
#include <string>

#include "pidc/errors.hpp"
#include "pidc/ring/concepts.hpp"

namespace pidc {

template <class R>
struct ResidueContext {
  R ring;
  typename R::Element prime;
};

/// Element of R/(p) for a prime p, stored as its canonical remainder.
template <class R>
class Residue {
 public:
  using Element = typename R::Element;

  Residue(std::shared_ptr<const ResidueContext<R>> ctx, const Element& v)
      : ctx_(std::move(ctx)), v_(ctx_->ring.rem(v, ctx_->prime)) {}

  const Element& value() const { return v_; }
  bool is_zero() const { return ctx_->ring.is_zero(v_); }

  Residue& operator+=(const Residue& o) {
    v_ = ctx_->ring.rem(v_ + o.v_, ctx_->prime);
    return *this;
  }
  Residue& operator-=(const Residue& o) {
    v_ = ctx_->ring.rem(v_ - o.v_, ctx_->prime);
    return *this;
  }
  Residue& operator*=(const Residue& o) {
    v_ = ctx_->ring.rem(v_ * o.v_, ctx_->prime);
    return *this;
  }
  Residue operator-() const { return Residue(ctx_, ctx_->ring.zero() - v_); }
  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend bool operator==(const Residue& a, const Residue& b) { return a.v_ == b.v_; }

  friend Residue inv(const Residue& a) {
    if (a.is_zero()) throw DegenerateInput("inverse of zero residue");
    auto bz = a.ctx_->ring.egcd(a.v_, a.ctx_->prime);
    return Residue(a.ctx_, bz.s);
  }
  friend bool is_zero(const Residue& a) { return a.is_zero(); }

 private:
  std::shared_ptr<const ResidueContext<R>> ctx_;
  Element v_;
};

/// The residue field R/(p).
template <class R>
class ResidueField {
 public:
  using Ring = R;
  using Element = Residue<R>;

  ResidueField(const R& ring, const typename R::Element& prime)
      : ctx_(std::make_shared<const ResidueContext<R>>(
            ResidueContext<R>{ring, ring.normalize(prime)})) {
    if (!ring.is_irreducible(prime)) {
      throw PreconditionError("residue field modulus is not prime: " + ring.to_string(prime));
    }
  }

  const R& ring() const { return ctx_->ring; }
  const typename R::Element& prime() const { return ctx_->prime; }
  Element zero() const { return Element(ctx_, ctx_->ring.zero()); }
  Element one() const { return Element(ctx_, ctx_->ring.one()); }
  Element reduce(const typename R::Element& a) const { return Element(ctx_, a); }
  typename R::Element lift(const Element& a) const { return a.value(); }
  mpz_class size() const { return ctx_->ring.residue_count(ctx_->prime); }
  /// k-th element in the canonical enumeration, 0 <= k < size().
  Element element(const mpz_class& k) const {
    return Element(ctx_, ctx_->ring.residue_at(ctx_->prime, k));
  }
  std::string to_string(const Element& a) const { return ctx_->ring.to_string(a.value()); }

 private:
  std::shared_ptr<const ResidueContext<R>> ctx_;
};

}  // namespace pidc
