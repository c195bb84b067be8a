#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pidc/commutator/criterion.hpp"
#include "pidc/errors.hpp"
#include "pidc/matrix/centralizer.hpp"
#include "pidc/matrix/field_maps.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/regularity/regularity.hpp"
#include "pidc/ring/integer_ring.hpp"
#include "pidc/ring/ring_ops.hpp"
#include "pidc/similarity/lr_form.hpp"

namespace pidc {

namespace detail {

template <PidRing R>
CommutatorWitness<typename R::Element> conjugated_back(const SimilarityWitness<typename R::Element>& w,
                                                       CommutatorWitness<typename R::Element> c) {
  c.x = w.unconjugate(c.x);
  c.y = w.unconjugate(c.y);
  return c;
}

// X = [[0,1],[x1,x2]] with Tr(XA) = b x1 - a x2 + c = 0, given (a, b) = (1).
template <PidRing R>
MatrixOf<R> companion_for(const R& r, const typename R::Element& a, const typename R::Element& b,
                          const typename R::Element& c) {
  using E = typename R::Element;
  auto bz = r.egcd(b, a);
  E gi = r.unit_inverse(bz.gcd);
  MatrixOf<R> x(2, 2, r.zero());
  x(0, 1) = r.one();
  x(1, 0) = E(r.zero() - c) * bz.s * gi;
  x(1, 1) = c * bz.t * gi;
  return x;
}

}  // namespace detail

/// n = 2: X is a companion matrix (or its transpose), hence regular over R.
template <PidRing R>
CommutatorWitness<typename R::Element> decompose_2x2(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  if (!a.square() || a.rows() != 2) throw PreconditionError("decompose_2x2 needs a 2x2 matrix");
  if (!r.is_zero(a.trace())) throw PreconditionError("decompose needs trace zero");
  if (is_zero_matrix(r, a)) return {a, a, {{"branch", "zero"}}};
  E m = content(r, a);
  auto s = exact_div(r, a, m);
  const E &ea = s(0, 0), &eb = s(0, 1), &ec = s(1, 0);
  CommutatorWitness<E> out;
  out.log.push_back({"content", r.to_string(m)});
  if (coprime(r, ea, eb)) {
    out.x = detail::companion_for(r, ea, eb, ec);
    out.log.push_back({"branch", "(a,b)=1"});
  } else if (coprime(r, ea, ec)) {
    out.x = detail::companion_for(r, ea, ec, eb).transpose();
    out.log.push_back({"branch", "(a,c)=1"});
  } else {
    E t = coprimify(r, ea, eb, ec);
    auto w = elementary_witness(r, 2, 0, 1, t);
    auto b = w.conjugate(s);
    if (!coprime(r, b(0, 0), b(0, 1))) throw InvariantFailure("coprimify did not make (1,1), (1,2) coprime");
    out.x = w.unconjugate(detail::companion_for(r, b(0, 0), b(0, 1), b(1, 0)));
    out.log.push_back({"branch", "coprimify"});
    out.log.push_back({"T", "1+(" + r.to_string(t) + ")E12"});
  }
  out.y = m * integral_solve(r, out.x, s);
  return out;
}

/// Scalar trace-zero A: X = J_n(0) is regular modulo every prime.
template <PidRing R>
CommutatorWitness<typename R::Element> decompose_scalar(const R& r, const MatrixOf<R>& a) {
  auto x = jordan_block(r, a.rows(), r.zero());
  if (is_zero_matrix(r, a)) return {x, zero_matrix(r, a.rows()), {{"branch", "scalar"}}};
  return {x, integral_solve(r, x, a), {{"branch", "scalar"}}};
}

/// The matrix with x_ii = -y (i even, 1-based), x21 = x, x31 = q and ones on
/// the subdiagonal from row 3 on.
template <PidRing R>
MatrixOf<R> main_template(const R& r, std::size_t n, const typename R::Element& x,
                          const typename R::Element& y, const typename R::Element& q) {
  MatrixOf<R> m(n, n, r.zero());
  for (std::size_t i = 1; i < n; i += 2) m(i, i) = r.zero() - y;
  m(1, 0) = x;
  m(2, 0) = q;
  for (std::size_t j = 2; j < n; ++j) m(j, j - 1) = r.one();
  return m;
}

/// E_n1 + kappa y E_{n-1,1} (kappa = 1 for even n, else 0), which commutes
/// with the conjugated template X0 over R.
template <PidRing R>
MatrixOf<R> centraliser_extra(const R& r, std::size_t n, const typename R::Element& y) {
  auto g = zero_matrix(r, n);
  g(n - 1, 0) = r.one();
  if (n % 2 == 0) g(n - 2, 0) = y;
  return g;
}

/// E12 + y E13.
template <PidRing R>
MatrixOf<R> subregular_e12(const R& r, std::size_t n, const typename R::Element& y) {
  auto m = zero_matrix(r, n);
  m(0, 1) = r.one();
  m(0, 2) = y;
  return m;
}

/// The n + 2 matrices 1, X0, ..., X0^{n-2}, E11, E12 + y E13 and
/// centraliser_extra, which span the centraliser of X0 modulo a prime
/// containing x + qy.
template <PidRing R>
std::vector<MatrixOf<R>> subregular_centraliser_basis(const R& r, const MatrixOf<R>& x0,
                                                      const typename R::Element& y) {
  const std::size_t n = x0.rows();
  std::vector<MatrixOf<R>> out;
  auto pw = identity(r, n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out.push_back(pw);
    pw = pw * x0;
  }
  out.push_back(unit_matrix(r, n, 0, 0));
  out.push_back(subregular_e12(r, n, y));
  out.push_back(centraliser_extra(r, n, y));
  return out;
}

template <class E>
struct MainParameters {
  E l;
  E d;
  E h;
  E x;
  E y;
  E d0;  // x^2 a12 + xy(a11 - a22) - y^2(a21 + y a31 + x a32)
};

/// x, y with (x, y) = (1) and a12 (x + l) = y c(A), for A in LR form with
/// (a11, a12) = (1) and a12 not dividing c(A).
template <PidRing R>
MainParameters<typename R::Element> main_parameters(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  const E& a12 = a(0, 1);
  E c = even_diagonal_sum(r, a);
  E sum = r.zero();
  for (std::size_t i = 1; i + 1 < n; ++i) sum = sum + a(i, i + 1);
  MainParameters<E> p;
  p.l = r.exact_div(sum, a12);
  p.d = gcd(r, a12, c);
  E u = r.exact_div(a12, p.d);
  p.h = r.one();
  if (!r.is_unit(u)) {
    for (const auto& pr : r.factor(u).primes())
      if (!in_prime(r, p.l, pr)) p.h = p.h * pr;
  }
  p.x = p.h * r.exact_div(c, p.d) - p.l;
  p.y = p.h * u;
  p.d0 = p.x * p.x * a12 + p.x * p.y * (a(0, 0) - a(1, 1)) -
         p.y * p.y * (a(1, 0) + p.y * a(2, 0) + p.x * a(2, 1));
  return p;
}

namespace detail {

// Reduce Q0 modulo p against the basis powers X0^0..X0^{k-1} plus `extra`.
// Returns the coefficients, or nullopt when Q0 mod p is not in the span.
template <PidRing R>
std::optional<std::vector<typename R::Element>> span_coefficients(const R& r, const typename R::Element& p,
                                                                  const MatrixOf<R>& q0, const MatrixOf<R>& x0,
                                                                  std::size_t powers,
                                                                  const std::vector<MatrixOf<R>>& extra) {
  ResidueField<R> f(r, p);
  const std::size_t n = x0.rows();
  std::vector<MatrixOf<R>> basis;
  auto pw = identity(r, n);
  for (std::size_t k = 0; k < powers; ++k) {
    basis.push_back(pw);
    pw = pw * x0;
  }
  for (const auto& e : extra) basis.push_back(e);
  MatrixOf<ResidueField<R>> sys(n * n, basis.size(), f.zero());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t e = 0; e < n * n; ++e) sys(e, c) = f.reduce(basis[c].data()[e]);
  auto sol = solve(f, sys, flatten(reduce_mod(f, q0)));
  if (!sol) return std::nullopt;
  std::vector<typename R::Element> out;
  for (const auto& v : *sol) out.push_back(f.lift(v));
  return out;
}

template <PidRing R>
MatrixOf<R> combine(const R& r, const MatrixOf<R>& x0, std::size_t powers, const std::vector<MatrixOf<R>>& extra,
                    const std::vector<typename R::Element>& coeffs) {
  const std::size_t n = x0.rows();
  auto out = zero_matrix(r, n);
  auto pw = identity(r, n);
  for (std::size_t k = 0; k < powers; ++k) {
    out += coeffs[k] * pw;
    pw = pw * x0;
  }
  for (std::size_t e = 0; e < extra.size(); ++e) out += coeffs[powers + e] * extra[e];
  return out;
}

// Prime factorisation of a nonzero m, dividing out the hinted primes first and
// factoring only what is left.
template <PidRing R>
std::vector<std::pair<typename R::Element, unsigned>> factor_with_hints(const R& r, typename R::Element m,
                                                                      const std::vector<typename R::Element>& hints) {
  std::vector<std::pair<typename R::Element, unsigned>> out;
  for (const auto& p : hints) {
    unsigned e = 0;
    while (r.divides(p, m)) {
      m = r.exact_div(m, p);
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  }
  if (!r.is_unit(m))
    for (const auto& f : r.factor(m).factors) out.push_back({f.prime, f.exponent});
  return out;
}

}  // namespace detail

/// n >= 3, A in LR form with (a11, a12) = (1): the main construction.
template <PidRing R>
CommutatorWitness<typename R::Element> decompose_lr(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  const E& a12 = a(0, 1);
  E c = even_diagonal_sum(r, a);
  CommutatorWitness<E> out;
  if (r.divides(a12, c)) {
    E lam = r.exact_div(c, a12);
    auto mw = elementary_witness(r, n, 1, 0, E(r.zero() - lam));
    auto b = mw.conjugate(a);
    if (!r.is_zero(even_diagonal_sum(r, b))) throw InvariantFailure("shortcut conjugation left c(B) nonzero");
    auto p = pn_matrix(r, n);
    auto y = integral_solve(r, p, b);
    out.x = mw.unconjugate(p);
    out.y = mw.unconjugate(y);
    out.log.push_back({"branch", "a12 | c(A)"});
    out.log.push_back({"M", "1-(" + r.to_string(lam) + ")E21"});
    return out;
  }

  auto mp = main_parameters(r, a);
  out.log.push_back({"branch", "main"});
  for (auto [k, v] : std::vector<std::pair<std::string, E>>{
           {"l", mp.l}, {"d", mp.d}, {"h", mp.h}, {"x", mp.x}, {"y", mp.y}, {"D0", mp.d0}})
    out.log.push_back({k, r.to_string(v)});
  if (!coprime(r, mp.x, mp.y)) throw InvariantFailure("(x, y) != (1)");
  if (r.is_zero(mp.d0)) throw InvariantFailure("x^2 a12 + xy(a11 - a22) - y^2(...) vanished");

  // x + qy must avoid the primes of D0 and every index-2 prime; a gcd test
  // covers D0 without factoring it. Among the first candidates prefer one
  // with x + qy a unit or irreducible, so V is known without factoring.
  const auto index2 = r.primes_of_index(2);
  auto avoids = [&](const E& q) {
    E v = mp.x + q * mp.y;
    if (r.is_zero(v) || !coprime(r, v, mp.d0)) return false;
    for (const auto& p : index2)
      if (in_prime(r, v, p)) return false;
    return true;
  };
  auto easy = [&](const E& q) {
    E v = mp.x + q * mp.y;
    return r.is_unit(v) || r.is_irreducible(v);
  };
  std::optional<E> q, first_ok;
  for (std::size_t k = 0; k < 2000 && !q; ++k) {
    E cand = r.element_at(k);
    if (!avoids(cand)) continue;
    if (!first_ok) first_ok = cand;
    if (easy(cand)) q = cand;
  }
  if (!q) q = first_ok;
  if (!q) {
    std::vector<E> s = r.factor(mp.d0).primes();
    for (const auto& p : index2) s.push_back(p);
    q = prime_avoidance(r, mp.x, mp.y, s);
  }
  out.log.push_back({"q", r.to_string(*q)});

  auto x = main_template(r, n, mp.x, mp.y, *q);
  if (!criterion_check(r, x, a).satisfied) throw InvariantFailure("Tr(X^r A) != 0 for the constructed X");

  auto nw = elementary_witness(r, n, 1, 0, *q);
  auto x0 = nw.conjugate(x);
  auto a0 = nw.conjugate(a);
  // X0 is lower Hessenberg with subdiagonal (x + qy, 1, ..., 1), so e1 has
  // Krylov determinant (x + qy)^(n-1) and every denominator lies over V.
  E s_v = mp.x + *q * mp.y;
  std::vector<E> e1(n, r.zero());
  e1[0] = r.one();
  std::vector<E> v_primes;
  if (r.is_irreducible(s_v)) {
    v_primes.push_back(r.normalize(s_v));
  } else if (!r.is_unit(s_v)) {
    v_primes = r.factor(s_v).primes();
  }
  {
    std::string vs;
    for (const auto& p : v_primes) vs += (vs.empty() ? "" : ",") + r.to_string(p);
    out.log.push_back({"V", vs});
  }
  auto sol = detail::krylov_fraction_solve(r, x0, a0, e1, v_primes);
  E m = sol.d;
  auto q0 = sol.c;
  auto gmat = centraliser_extra(r, n, mp.y);
  if (x0 * gmat != gmat * x0) throw InvariantFailure("E_n1 + kappa y E_{n-1,1} does not commute with X0");

  // Divide out every prime of m for which Q0 is a polynomial in X0 plus a
  // multiple of G modulo p.
  for (bool changed = true; changed && !r.is_unit(m);) {
    changed = false;
    for (const auto& pe : detail::factor_with_hints(r, m, sol.primes)) {
      const E& p = pe.first;
      auto co = detail::span_coefficients(r, p, q0, x0, n, {gmat});
      if (!co) continue;
      q0 = exact_div(r, q0 - detail::combine(r, x0, n, {gmat}, *co), p);
      m = r.exact_div(m, p);
      changed = true;
      break;
    }
  }
  if (commutator(x0, q0) != m * a0) throw InvariantFailure("[X0, Q0] != m A0 after stripping");

  auto x1 = x0;
  if (!r.is_unit(m)) {
    out.log.push_back({"m", r.to_string(m)});
    std::vector<E> primes;
    for (const auto& pe : detail::factor_with_hints(r, m, sol.primes)) primes.push_back(pe.first);
    std::vector<E> ts;
    std::vector<std::vector<E>> fixes;
    auto e11 = unit_matrix(r, n, 0, 0);
    auto e12 = subregular_e12(r, n, mp.y);
    for (const auto& p : primes) {
      if (!in_prime(r, E(mp.x + *q * mp.y), p)) {
        throw InvariantFailure("remaining prime " + r.to_string(p) + " is not in V");
      }
      if (r.residue_count(p) < 3) throw InvariantFailure("prime of index 2 in V");
      auto co = detail::span_coefficients(r, p, q0, x0, n - 1, {e11, e12, gmat});
      if (!co) throw InvariantFailure("Q0 mod " + r.to_string(p) + " is outside the subregular centraliser");
      E alpha = (*co)[n - 1];
      if (in_prime(r, alpha, p)) throw InvariantFailure("alpha lies in " + r.to_string(p));
      // Keep only the alpha E11 + beta(E12 + y E13) part modulo p.
      auto poly = *co;
      poly.erase(poly.begin() + static_cast<long>(n) - 1, poly.begin() + static_cast<long>(n) + 1);
      fixes.push_back(poly);
      E t = r.zero();
      bool found = false;
      for (std::size_t k = 1; k < 1000 && !found; ++k) {
        t = r.residue_at(p, static_cast<long>(k));
        if (!in_prime(r, t, p) && !in_prime(r, E(alpha * t + mp.y), p)) found = true;
      }
      if (!found) throw InvariantFailure("no t with t, alpha t + y outside " + r.to_string(p));
      ts.push_back(t);
    }
    // CRT the coefficients so the subtracted matrix commutes with X0 over R.
    std::vector<E> coeffs;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<E> res;
      for (const auto& f : fixes) res.push_back(f[k]);
      coeffs.push_back(crt(r, res, primes));
    }
    auto q1 = q0 - detail::combine(r, x0, n - 1, {gmat}, coeffs);
    E t = crt(r, ts, primes);
    out.log.push_back({"t", r.to_string(t)});
    x1 = x0 + t * q1;
    if (commutator(x1, q1) != m * a0) throw InvariantFailure("[X1, Q1] != m A0");
    for (const auto& p : primes) {
      if (!is_regular_mod_prime(r, x1, p).regular) {
        throw InvariantFailure("X1 is not regular modulo " + r.to_string(p));
      }
    }
    // Each pass divides m by one prime, so this runs sum(e_i) times.
    auto [u, y1] = detail::strip_denominator(r, x1, m, q1, primes);
    m = u;
    q0 = y1;
  }
  out.x = nw.unconjugate(x1);
  out.y = nw.unconjugate(r.unit_inverse(m) * q0);
  return out;
}

/// A = [X, Y] over a PID for any trace-zero A.
template <PidRing R>
CommutatorWitness<typename R::Element> decompose(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  if (!a.square() || n == 0) throw PreconditionError("decompose needs a non-empty square matrix");
  if (!r.is_zero(a.trace())) throw PreconditionError("decompose needs trace zero");
  if (n == 1) return {a, a, {{"branch", "n=1"}}};
  if (n == 2) return decompose_2x2(r, a);
  if (is_scalar(r, a)) return decompose_scalar(r, a);
  auto lr = lr_form(r, a);
  E m = gcd(r, lr.b(0, 0), lr.b(0, 1));
  auto s = exact_div(r, lr.b, m);
  auto inner = decompose_lr(r, s);
  inner.y = m * inner.y;
  inner.log.insert(inner.log.begin(), {"content", r.to_string(m)});
  inner.log.insert(inner.log.begin(), {"pivot", r.to_string(lr.pivot)});
  return detail::conjugated_back<R>(lr.witness, std::move(inner));
}

/// Trace-zero A over Z/N (entries given by integer representatives): lift,
/// decompose over Z, reduce.
inline CommutatorWitness<Integer> decompose_mod_n(const Integer& modulus, const Matrix<Integer>& a) {
  IntegerRing zz;
  if (modulus <= 1) throw PreconditionError("modulus must be at least 2");
  auto lifted = a.map([&](const Integer& v) {
    Integer w = v % modulus;
    if (w < 0) w += modulus;
    return w;
  });
  Integer tr = lifted.trace();
  if (tr % modulus != 0) throw PreconditionError("trace is not zero modulo N");
  lifted(0, 0) -= tr;
  auto w = decompose(zz, lifted);
  auto red = [&](const Integer& v) {
    Integer t = v % modulus;
    if (t < 0) t += modulus;
    return t;
  };
  w.x = w.x.map(red);
  w.y = w.y.map(red);
  w.log.push_back({"modulus", modulus.get_str()});
  return w;
}

/// True when XY - YX = A entrywise modulo N.
inline bool verifies_mod_n(const Integer& modulus, const CommutatorWitness<Integer>& w, const Matrix<Integer>& a) {
  auto diff = commutator(w.x, w.y) - a;
  for (const auto& v : diff.data())
    if (v % modulus != 0) return false;
  return true;
}

/// n = 3 with X regular modulo every prime: X(X + y) = E31.
template <PidRing R>
CommutatorWitness<typename R::Element> decompose_3x3_regular(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  if (!a.square() || a.rows() != 3) throw PreconditionError("decompose_3x3_regular needs a 3x3 matrix");
  if (!r.is_zero(a.trace())) throw PreconditionError("decompose needs trace zero");
  if (is_scalar(r, a)) return decompose_scalar(r, a);
  auto lr = lr_form(r, a);
  E m = gcd(r, lr.b(0, 0), lr.b(0, 1));
  auto s = exact_div(r, lr.b, m);
  const E& a12 = s(0, 1);
  E c = s(1, 1);
  E a23p = r.exact_div(s(1, 2), a12);
  E d = gcd(r, a12, c);
  auto bz = r.egcd(r.exact_div(c, d), r.exact_div(a12, d));
  E gi = r.unit_inverse(bz.gcd);
  E z = bz.s * gi;
  E q = bz.t * gi;
  E h = r.one() + a23p * z * z;
  E x = h * r.exact_div(c, d) - a23p * z;
  E y = h * r.exact_div(a12, d);
  if (!(x * z + q * y == r.one())) throw InvariantFailure("xz + qy != 1");
  MatrixOf<R> xm(3, 3, r.zero());
  xm(1, 0) = x;
  xm(1, 1) = r.zero() - y;
  xm(2, 0) = q;
  xm(2, 1) = z;
  if (xm * (xm + scalar_matrix(r, 3, y)) != unit_matrix(r, 3, 2, 0)) throw InvariantFailure("X(X + y) != E31");
  CommutatorWitness<E> out;
  out.x = xm;
  out.y = m * integral_solve(r, xm, s);
  out.log = {{"branch", "n=3 regular"}, {"pivot", r.to_string(lr.pivot)}, {"content", r.to_string(m)},
             {"x", r.to_string(x)}, {"y", r.to_string(y)}, {"q", r.to_string(q)}, {"z", r.to_string(z)},
             {"h", r.to_string(h)}};
  return detail::conjugated_back<R>(lr.witness, std::move(out));
}

}  // namespace pidc
