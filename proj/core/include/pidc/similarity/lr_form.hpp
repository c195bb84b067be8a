#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/field_maps.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"
#include "pidc/matrix/sl_lift.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/ring/ring_ops.hpp"
#include "pidc/similarity/row_column.hpp"

namespace pidc {

/// b with g A g^-1 = B and (1,2) entry outside every prime of S.
/// Per prime p the target g_p in SL_n(R/p) comes from a partial cyclic basis
/// (Au, u, e_k, ...) with the first vector rescaled to determinant 1; the
/// targets are combined by sl_lift.
template <PidRing R>
Reduced<typename R::Element> make_b12_nonzero_mod(const R& r, const MatrixOf<R>& a,
                                                  const std::vector<typename R::Element>& primes) {
  using E = typename R::Element;
  using F = ResidueField<R>;
  const std::size_t n = a.rows();
  if (n < 2) throw PreconditionError("make_b12_nonzero_mod needs n >= 2");
  bool needed = false;
  for (const auto& p : primes) {
    F f(r, p);
    if (is_scalar(f, reduce_mod(f, a))) {
      throw PreconditionError("matrix is scalar modulo " + r.to_string(p));
    }
    if (in_prime(r, a(0, 1), p)) needed = true;
  }
  if (!needed) return {a, identity_witness(r, n)};

  std::vector<MatrixOf<R>> targets;
  for (const auto& p : primes) {
    F f(r, p);
    auto ap = reduce_mod(f, a);
    auto independent = [&](const Vec<typename F::Element>& u) {
      return rank(f, from_columns(f, std::vector<Vec<typename F::Element>>{u, apply(f, ap, u)})) == 2;
    };
    std::optional<Vec<typename F::Element>> u;
    for (std::size_t i = 0; i < n && !u; ++i) {
      Vec<typename F::Element> e(n, f.zero());
      e[i] = f.one();
      if (independent(e)) u = e;
    }
    for (std::size_t i = 0; i < n && !u; ++i)
      for (std::size_t j = i + 1; j < n && !u; ++j) {
        Vec<typename F::Element> e(n, f.zero());
        e[i] = f.one();
        e[j] = f.one();
        if (independent(e)) u = e;
      }
    if (!u) throw InvariantFailure("non-scalar residue matrix without a non-eigenvector");
    std::vector<Vec<typename F::Element>> cols{apply(f, ap, *u), *u};
    for (std::size_t k = 0; k < n && cols.size() < n; ++k) {
      Vec<typename F::Element> e(n, f.zero());
      e[k] = f.one();
      auto trial = cols;
      trial.push_back(e);
      if (rank(f, from_columns(f, trial)) == trial.size()) cols = std::move(trial);
    }
    auto pm = from_columns(f, cols);
    auto delta = inv(det_field(f, pm));
    for (auto& v : cols[0]) v = v * delta;
    // With P = (b_1, b_2, ...) and A b_2 = det(P) b_1, P^-1 A P has (1,2) entry det(P) != 0.
    targets.push_back(lift_residues(f, inverse(f, from_columns(f, cols))));
  }
  auto w = sl_lift(r, targets, primes);
  auto b = w.conjugate(a);
  for (const auto& p : primes) {
    if (in_prime(r, b(0, 1), p)) throw InvariantFailure("lifted conjugator left b12 in a prime of S");
  }
  return {b, w};
}

template <class E>
struct ScalarSplit {
  E a;
  E d;
  Matrix<E> reduced;
};

/// A = a 1 + d A' with a = A_11, d a generator of I(A) and I(A') = (1).
template <PidRing R>
ScalarSplit<typename R::Element> scalar_split(const R& r, const MatrixOf<R>& m) {
  using E = typename R::Element;
  if (is_scalar(r, m)) throw PreconditionError("scalar_split of a scalar matrix");
  E a = m(0, 0);
  E d = scalar_defect_ideal(r, m);
  auto shifted = m - scalar_matrix(r, m.rows(), a);
  return {a, d, exact_div(r, shifted, d)};
}

template <class E>
struct ProbeRecord {
  std::string probe;
  E old_pivot;
  E new_pivot;
  unsigned old_factors = 0;
  unsigned new_factors = 0;
};

template <class E>
struct LaffeyReamsForm {
  Matrix<E> b;
  SimilarityWitness<E> witness;
  E pivot;
  std::vector<ProbeRecord<E>> probe_log;
};

namespace detail {

// Factor-count descent on the (1,2) entry of a matrix with I = (1) and
// b_1j = 0 for j >= 3. Each probe is a conjugation followed by row-1 (and
// where noted column-2) gcd reduction; it is applied only when the new
// (1,2) entry is a proper divisor of the current one.
template <PidRing R>
class Descent {
 public:
  using E = typename R::Element;

  Descent(const R& r, MatrixOf<R> b, SimilarityWitness<E> w) : r_(r), b_(std::move(b)), w_(std::move(w)) {}

  void run() {
    while (!r_.is_unit(b_(0, 1))) {
      if (!step()) {
        throw InvariantFailure("descent stuck: no probe reduces the pivot " + r_.to_string(b_(0, 1)));
      }
    }
  }

  const MatrixOf<R>& b() const { return b_; }
  const SimilarityWitness<E>& witness() const { return w_; }
  std::vector<ProbeRecord<E>>& log() { return log_; }

 private:
  struct View {
    MatrixOf<R> m;
    SimilarityWitness<E> w;  // relative to b_
  };

  View conj(const View& v, const SimilarityWitness<E>& s) const { return {s.conjugate(v.m), v.w.then(s)}; }
  View conj_elem(const View& v, std::size_t i, std::size_t j, const E& lambda) const {
    return conj(v, elementary_witness(r_, v.m.rows(), i, j, lambda));
  }
  View col2(const View& v) const {
    auto c = col_reduce(r_, v.m, 1);
    return {c.b, v.w.then(c.witness)};
  }

  bool attempt(const View& v, const std::string& name) {
    auto rr = row_reduce(r_, v.m, 0);
    const E& cand = rr.b(0, 1);
    const E& pivot = b_(0, 1);
    if (r_.is_zero(cand) || !r_.divides(cand, pivot) || r_.divides(pivot, cand)) return false;
    unsigned before = r_.factor(pivot).total_multiplicity();
    unsigned after = r_.factor(cand).total_multiplicity();
    log_.push_back({name, pivot, cand, before, after});
    w_ = w_.then(v.w).then(rr.witness);
    b_ = rr.b;
    return true;
  }

  // lambda, lambda', lambda - lambda': units modulo the pivot.
  std::vector<E> unit_triple() const {
    const E& pivot = b_(0, 1);
    auto fac = r_.factor(pivot);
    std::vector<E> mods, r1, r2;
    for (const auto& pp : fac.factors) {
      if (r_.residue_count(pp.prime) < 3) {
        throw InvariantFailure("pivot lies in a prime of index 2");
      }
      E q = r_.one();
      for (unsigned k = 0; k < pp.exponent; ++k) q = q * pp.prime;
      mods.push_back(q);
      r1.push_back(r_.residue_at(pp.prime, 1));
      r2.push_back(r_.residue_at(pp.prime, 2));
    }
    E l1 = crt(r_, r1, mods), l2 = crt(r_, r2, mods);
    return {l1, l2, E(l1 - l2)};
  }

  bool step() {
    const std::size_t n = b_.rows();
    const E pivot = b_(0, 1);
    const auto ys = unit_triple();
    const View base{b_, identity_witness(r_, n)};
    for (std::size_t v = 2; v < n; ++v) {
      const std::string tag = "[v=" + std::to_string(v + 1) + "] ";
      View view = base;
      if (v != 2) {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::swap(perm[2], perm[v]);
        view = conj(view, permutation_witness(r_, perm));
      }
      if (attempt(col2(view), tag + "column-2 gcd")) return true;
      // pivot | b_32: clear (3,2) with 1 - a E_31.
      E a = r_.exact_div(view.m(2, 1), pivot);
      View b1 = conj_elem(view, 2, 0, E(r_.zero() - a));
      for (std::size_t k = 0; k < ys.size(); ++k) {
        if (attempt(conj_elem(b1, 0, 2, ys[k]), tag + "1+yE13 y#" + std::to_string(k))) return true;
      }
      // pivot | b_31 and pivot | b_33 - b_11.
      E alpha = r_.exact_div(E(b1.m(2, 2) - b1.m(0, 0)), pivot);
      E beta = r_.exact_div(b1.m(2, 0), pivot);
      View b2 = conj_elem(conj_elem(b1, 2, 0, r_.one()), 1, 0, E(beta - alpha));
      if (!r_.is_zero(b2.m(2, 0)) || !(b2.m(2, 1) == pivot) || !r_.is_zero(b2.m(0, 2))) {
        throw InvariantFailure("3x3 normalisation did not produce the expected pattern");
      }
      std::vector<std::size_t> swap13(n);
      for (std::size_t i = 0; i < n; ++i) swap13[i] = i;
      std::swap(swap13[0], swap13[2]);
      const View c1 = conj_elem(b2, 2, 0, E(r_.zero() - r_.one()));
      const View c2 = conj_elem(conj(b2, permutation_witness(r_, swap13)), 2, 0, E(r_.zero() - r_.one()));
      int which = 0;
      for (const View* c : {&c1, &c2}) {
        ++which;
        const std::string ctag = tag + "claim-II view " + std::to_string(which) + " ";
        if (attempt(*c, ctag + "row-1 gcd")) return true;
        if (attempt(col2(*c), ctag + "column-2 gcd")) return true;
        for (std::size_t k = 0; k < ys.size(); ++k) {
          if (attempt(col2(conj_elem(*c, 2, 1, ys[k])), ctag + "1+xE32 x#" + std::to_string(k))) return true;
          if (attempt(conj_elem(*c, 0, 2, ys[k]), ctag + "1+yE13 y#" + std::to_string(k))) return true;
        }
      }
    }
    for (std::size_t u = 2; u < n; ++u) {
      if (attempt(col2(conj_elem(base, u, 1, r_.one())), "1+E" + std::to_string(u + 1) + "2 column-2 gcd")) {
        return true;
      }
    }
    return false;
  }

  const R& r_;
  MatrixOf<R> b_;
  SimilarityWitness<E> w_;
  std::vector<ProbeRecord<E>> log_;
};

}  // namespace detail

/// Laffey–Reams form: B similar to A whose (1,2) entry divides every
/// off-diagonal entry and every diagonal difference, with b_ij = 0 for
/// j >= i + 2 (rows 1..n-2).
template <PidRing R>
LaffeyReamsForm<typename R::Element> lr_form(const R& r, const MatrixOf<R>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  if (!a.square() || n < 3) throw PreconditionError("lr_form needs a square matrix with n >= 3");
  if (is_scalar(r, a)) throw PreconditionError("lr_form of a scalar matrix");
  auto split = scalar_split(r, a);

  auto first = make_b12_nonzero_mod(r, split.reduced, r.primes_of_index(2));
  MatrixOf<R> b = first.b;
  SimilarityWitness<E> w = first.witness;

  bool row_zero = true;
  for (std::size_t j = 1; j < n; ++j) row_zero = row_zero && r.is_zero(b(0, j));
  if (row_zero) {
    std::size_t u = n;
    for (std::size_t i = 1; i < n && u == n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !r.is_zero(b(i, j))) {
          u = i;
          break;
        }
    if (u < n) {
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      std::swap(perm[0], perm[u]);
      apply_step(b, w, permutation_witness(r, perm));
    } else {
      std::size_t j = 1;
      while (b(j, j) == b(0, 0)) ++j;
      apply_step(b, w, elementary_witness(r, n, 0, j, r.one()));
    }
  }
  reduce_row_tail(r, b, w, 0);

  detail::Descent<R> descent(r, b, w);
  descent.run();
  b = descent.b();
  w = descent.witness();
  // Normalise the unit pivot to 1, then sweep rows 2..n-2 into Hessenberg shape.
  reduce_row_tail(r, b, w, 0);
  size_reduce(r, b, w, 1);
  for (std::size_t i = 1; i + 2 < n; ++i) {
    reduce_row_tail(r, b, w, i);
    size_reduce(r, b, w, i + 1);
  }

  MatrixOf<R> full = scalar_matrix(r, n, split.a) + split.d * b;
  return {full, w, split.d, std::move(descent.log())};
}

}  // namespace pidc
