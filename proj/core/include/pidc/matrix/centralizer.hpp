#pragma once

#include <cstddef>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/linalg.hpp"
#include "pidc/matrix/ring_matrix.hpp"

namespace pidc {

/// Matrix of Y -> XY - YX on row-major vec(Y), an n^2 x n^2 operator.
template <class K>
MatrixOf<K> ad_operator(const K& k, const MatrixOf<K>& x) {
  const std::size_t n = x.rows();
  MatrixOf<K> m(n * n, n * n, k.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t l = 0; l < n; ++l) {
        m(row, l * n + j) = m(row, l * n + j) + x(i, l);
        m(row, i * n + l) = m(row, i * n + l) - x(l, j);
      }
    }
  return m;
}

/// Q with XQ - QX = A over a field; free variables of the linear system are
/// set to zero. Throws CriterionViolation when no solution exists.
template <class K>
MatrixOf<K> solve_commutator_equation(const K& k, const MatrixOf<K>& x, const MatrixOf<K>& a) {
  if (x.rows() != a.rows() || !x.square() || !a.square()) {
    throw PreconditionError("solve_commutator_equation: shape mismatch");
  }
  auto sol = solve(k, ad_operator(k, x), flatten(a));
  if (!sol) throw CriterionViolation("A is not of the form [X, Q]");
  return unflatten(k, x.rows(), *sol);
}

/// f_0..f_{n-1} with sum f_i X^i = C, or throws NotInCentralizer.
template <class K>
Vec<typename K::Element> express_as_polynomial(const K& k, const MatrixOf<K>& c,
                                               const MatrixOf<K>& x) {
  const std::size_t n = x.rows();
  MatrixOf<K> sys(n * n, n, k.zero());
  auto pw = identity(k, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t e = 0; e < n * n; ++e) sys(e, p) = pw.data()[e];
    pw = pw * x;
  }
  auto sol = solve(k, sys, flatten(c));
  if (!sol) throw NotInCentralizer("matrix is not a polynomial in X");
  return *sol;
}

template <class K>
MatrixOf<K> eval_polynomial(const K& k, const Vec<typename K::Element>& f, const MatrixOf<K>& x) {
  const std::size_t n = x.rows();
  auto out = zero_matrix(k, n);
  auto pw = identity(k, n);
  for (std::size_t p = 0; p < f.size(); ++p) {
    out += f[p] * pw;
    if (p + 1 < f.size()) pw = pw * x;
  }
  return out;
}

/// Basis of the centraliser {Y : XY = YX} over the field K.
template <class K>
std::vector<MatrixOf<K>> centralizer_basis(const K& k, const MatrixOf<K>& x) {
  std::vector<MatrixOf<K>> out;
  for (const auto& v : nullspace(k, ad_operator(k, x))) out.push_back(unflatten(k, x.rows(), v));
  return out;
}

/// Degree of the minimal polynomial: the dimension of span{1, X, X^2, ...}.
template <class K>
std::size_t min_poly_degree(const K& k, const MatrixOf<K>& x) {
  const std::size_t n = x.rows();
  MatrixOf<K> sys(n * n, n + 1, k.zero());
  auto pw = identity(k, n);
  for (std::size_t p = 0; p <= n; ++p) {
    for (std::size_t e = 0; e < n * n; ++e) sys(e, p) = pw.data()[e];
    pw = pw * x;
  }
  return rank(k, sys);
}

/// Entrywise Chinese remaindering of matrices given by representatives.
template <PidRing R>
MatrixOf<R> mat_crt(const R& r, const std::vector<MatrixOf<R>>& residues,
                    const std::vector<typename R::Element>& moduli) {
  if (residues.empty() || residues.size() != moduli.size()) {
    throw DegenerateInput("mat_crt needs equally many matrices and moduli");
  }
  const auto rows = residues[0].rows(), cols = residues[0].cols();
  MatrixOf<R> out(rows, cols, r.zero());
  std::vector<typename R::Element> vals(residues.size(), r.zero());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t t = 0; t < residues.size(); ++t) {
        if (residues[t].rows() != rows || residues[t].cols() != cols) {
          throw PreconditionError("mat_crt shape mismatch");
        }
        vals[t] = residues[t](i, j);
      }
      out(i, j) = crt(r, vals, moduli);
    }
  return out;
}

}  // namespace pidc
