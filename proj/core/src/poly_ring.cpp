#include "pidc/ring/poly_ring.hpp"

#include <algorithm>
#include <cassert>

#include "pidc/errors.hpp"

namespace pidc {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DegenerateInput("inverse of zero in F_" + std::to_string(p));
  return powmod(a, p - 2, p);
}

Poly::Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

Poly Poly::constant(std::uint64_t p, std::int64_t c) {
  std::int64_t m = c % static_cast<std::int64_t>(p);
  if (m < 0) m += static_cast<std::int64_t>(p);
  return Poly(p, {static_cast<std::uint64_t>(m)});
}

Poly Poly::monomial(std::uint64_t p, std::uint64_t c, std::size_t degree) {
  std::vector<std::uint64_t> v(degree + 1, 0);
  v[degree] = c;
  return Poly(p, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
  assert(p_ == o.p_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    std::uint64_t s = c_[i] + o.c_[i];
    c_[i] = s >= p_ ? s - p_ : s;
  }
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  assert(p_ == o.p_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
  }
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  assert(p_ == o.p_);
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = (r[i + j] + mulmod(c_[i], o.c_[j], p_)) % p_;
    }
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly Poly::operator-() const {
  Poly r(p_);
  return r -= *this;
}

Poly Poly::scaled(std::uint64_t s) const {
  Poly r = *this;
  for (auto& c : r.c_) c = mulmod(c, s % p_, p_);
  r.trim();
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(p_);
  std::vector<std::uint64_t> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mulmod(c_[i], i % p_, p_);
  return Poly(p_, std::move(d));
}

std::uint64_t Poly::eval(std::uint64_t x) const {
  std::uint64_t r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = (mulmod(r, x, p_) + c_[i]) % p_;
  return r;
}

PolyRing::PolyRing(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ull << 62) || mpz_probab_prime_p(mpz_class(std::to_string(p)).get_mpz_t(), 32) == 0) {
    throw PreconditionError("F_p[x] requires a prime p < 2^62, got " + std::to_string(p));
  }
}

Poly PolyRing::normalize(const Element& a) const {
  if (a.is_zero()) return a;
  return a.scaled(invmod(a.lead(), p_));
}

Poly PolyRing::unit_part(const Element& a) const {
  if (a.is_zero()) return one();
  return Poly(p_, {a.lead()});
}

Poly PolyRing::unit_inverse(const Element& u) const {
  if (!is_unit(u)) throw PreconditionError("unit_inverse of non-unit " + to_string(u));
  return Poly(p_, {invmod(u.coeff(0), p_)});
}

std::pair<Poly, Poly> PolyRing::divmod(const Element& a, const Element& b) const {
  if (b.is_zero()) throw DegenerateInput("polynomial division by zero");
  if (a.degree() < b.degree()) return {zero(), a};
  std::vector<std::uint64_t> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const std::uint64_t inv = invmod(b.lead(), p_);
  std::vector<std::uint64_t> q(r.size() - db, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    std::uint64_t c = mulmod(r[k], inv, p_);
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      std::uint64_t t = mulmod(c, bc[j], p_);
      std::size_t idx = k - db + j;
      r[idx] = r[idx] >= t ? r[idx] - t : r[idx] + p_ - t;
    }
  }
  r.resize(db);
  return {Poly(p_, std::move(q)), Poly(p_, std::move(r))};
}

bool PolyRing::divides(const Element& d, const Element& a) const {
  if (d.is_zero()) return a.is_zero();
  return divmod(a, d).second.is_zero();
}

Poly PolyRing::exact_div(const Element& a, const Element& d) const {
  if (d.is_zero()) {
    if (a.is_zero()) return zero();
    throw InvariantFailure("inexact division by zero polynomial");
  }
  auto [q, r] = divmod(a, d);
  if (!r.is_zero()) throw InvariantFailure("inexact division " + to_string(a) + " / " + to_string(d));
  return q;
}

Bezout<Poly> PolyRing::egcd(const Element& a, const Element& b) const {
  if (a.is_zero() && b.is_zero()) throw DegenerateInput("egcd of (0, 0)");
  Poly r0 = a, r1 = b, s0 = one(), s1 = zero(), t0 = zero(), t1 = one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    Poly t = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  const std::uint64_t inv = invmod(r0.lead(), p_);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly PolyRing::gcd(const Element& a, const Element& b) const {
  if (a.is_zero() && b.is_zero()) return zero();
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r = divmod(r0, r1).second;
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return normalize(r0);
}

Poly PolyRing::powmod(const Element& a, const mpz_class& e, const Element& m) const {
  Poly result = rem(one(), m);
  Poly base = rem(a, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(result * result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(result * base, m);
  }
  return result;
}

std::vector<std::pair<Poly, unsigned>> PolyRing::squarefree(const Element& f) const {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly c = gcd(f, f.derivative());
  Poly w = exact_div(f, c);
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = exact_div(w, y);
    if (fac.degree() > 0) out.emplace_back(fac, i);
    w = y;
    c = exact_div(c, y);
    ++i;
  }
  if (c.degree() > 0) {
    // c is a p-th power: take the root coefficient-wise.
    std::vector<std::uint64_t> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p_) root.push_back(c.coeffs()[k]);
    for (auto& [g, e] : squarefree(Poly(p_, std::move(root)))) {
      out.emplace_back(g, static_cast<unsigned>(e * p_));
    }
  }
  return out;
}

std::vector<std::pair<Poly, unsigned>> PolyRing::distinct_degree(const Element& f0) const {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly f = f0;
  Poly h = rem(x(), f);
  unsigned i = 1;
  while (f.degree() >= 2 * static_cast<long>(i)) {
    h = powmod(h, mpz_class(std::to_string(p_)), f);
    Poly g = gcd(h - x(), f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = exact_div(f, g);
      h = rem(h, f);
    }
    ++i;
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

void PolyRing::equal_degree(const Element& f, unsigned d, std::vector<Element>& out,
                            std::uint64_t& seed) const {
  if (f.degree() == static_cast<long>(d)) {
    out.push_back(f);
    return;
  }
  auto next = [&seed]() {
    seed += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  mpz_class q = 1;
  for (unsigned k = 0; k < d; ++k) q *= static_cast<unsigned long>(p_);
  for (;;) {
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(f.degree()));
    for (auto& c : coeffs) c = next() % p_;
    Poly a(p_, std::move(coeffs));
    if (a.degree() <= 0) continue;
    Poly b;
    if (p_ == 2) {
      Poly term = a;
      b = a;
      for (unsigned k = 1; k < d; ++k) {
        term = rem(term * term, f);
        b += term;
      }
    } else {
      b = powmod(a, (q - 1) / 2, f) - one();
    }
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, out, seed);
      equal_degree(exact_div(f, g), d, out, seed);
      return;
    }
  }
}

Factorisation<Poly> PolyRing::factor(const Element& a) const {
  if (a.is_zero()) throw DegenerateInput("factor of the zero polynomial");
  Factorisation<Poly> out;
  out.unit = unit_part(a);
  Poly f = normalize(a);
  std::uint64_t seed = 0x5eed;
  for (auto& [sf, e] : squarefree(f)) {
    for (auto& [g, d] : distinct_degree(sf)) {
      std::vector<Poly> parts;
      equal_degree(g, d, parts, seed);
      for (auto& part : parts) out.factors.push_back({normalize(part), e});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [this](const auto& l, const auto& r) { return less(l.prime, r.prime); });
  // Merge equal primes produced by different squarefree layers.
  std::vector<PrimePower<Poly>> merged;
  for (auto& pp : out.factors) {
    if (!merged.empty() && merged.back().prime == pp.prime) {
      merged.back().exponent += pp.exponent;
    } else {
      merged.push_back(pp);
    }
  }
  out.factors = std::move(merged);
  return out;
}

bool PolyRing::is_irreducible(const Element& a) const {
  if (a.degree() < 1) return false;
  auto f = factor(a);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

mpz_class PolyRing::residue_count(const Element& prime) const {
  mpz_class q = 1;
  for (long k = 0; k < prime.degree(); ++k) q *= static_cast<unsigned long>(p_);
  return q;
}

Poly PolyRing::element_at(const mpz_class& k) const {
  std::vector<std::uint64_t> digits;
  mpz_class rest = k;
  const mpz_class base(std::to_string(p_));
  while (rest > 0) {
    mpz_class d = rest % base;
    digits.push_back(std::stoull(d.get_str()));
    rest /= base;
  }
  return Poly(p_, std::move(digits));
}

Poly PolyRing::residue_at(const Element& prime, const mpz_class& k) const {
  Poly r = element_at(k);
  if (r.degree() >= prime.degree()) throw PreconditionError("residue index out of range");
  return r;
}

std::vector<Poly> PolyRing::primes_of_index(const mpz_class& k) const {
  if (k < 2) throw PreconditionError("index must be >= 2");
  mpz_class q = k;
  unsigned d = 0;
  while (q % p_ == 0) {
    q /= static_cast<unsigned long>(p_);
    ++d;
  }
  if (q != 1) return {};
  if (k > 1000000) throw BudgetExceeded("too many candidate irreducibles of index " + k.get_str());
  std::vector<Poly> out;
  const unsigned long count = k.get_ui();
  for (unsigned long i = 0; i < count; ++i) {
    Poly low = element_at(i);
    Poly cand = low + Poly::monomial(p_, 1, d);
    if (is_irreducible(cand)) out.push_back(cand);
  }
  std::sort(out.begin(), out.end(), [this](const Poly& a, const Poly& b) { return less(a, b); });
  return out;
}

bool PolyRing::less(const Element& a, const Element& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

std::string PolyRing::to_string(const Element& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    std::uint64_t c = a.coeffs()[i];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i > 0) {
      if (c != 1) s += "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace pidc
