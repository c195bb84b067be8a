#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"
#include "pidc/matrix/matrix.hpp"
#include "pidc/matrix/ring_matrix.hpp"

namespace pidc {

// Exact Gaussian elimination over a field object K whose elements provide
// + - *, is_zero(e) and inv(e). Pivoting is deterministic: the first
// nonzero entry at or below the current row in the current column.

template <class E>
using Vec = std::vector<E>;

template <class E>
struct EchelonForm {
  Matrix<E> reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivot_cols;  // pivot column of row i
};

template <class K>
EchelonForm<typename K::Element> rref(const K& k, MatrixOf<K> m) {
  using E = typename K::Element;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    E s = inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      E f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  (void)k;
  return {std::move(m), std::move(pivots)};
}

template <class K>
std::size_t rank(const K& k, const MatrixOf<K>& m) {
  return rref(k, m).pivot_cols.size();
}

/// Basis of {v : M v = 0}, one vector per free column, in column order.
template <class K>
std::vector<Vec<typename K::Element>> nullspace(const K& k, const MatrixOf<K>& m) {
  auto ef = rref(k, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivot_cols) is_pivot[c] = true;
  std::vector<Vec<typename K::Element>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<typename K::Element> v(m.cols(), k.zero());
    v[f] = k.one();
    for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) v[ef.pivot_cols[i]] = -ef.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A particular solution of M v = b with free variables set to zero, or nullopt.
template <class K>
std::optional<Vec<typename K::Element>> solve(const K& k, const MatrixOf<K>& m,
                                              const Vec<typename K::Element>& b) {
  if (b.size() != m.rows()) throw PreconditionError("right-hand side has the wrong length");
  MatrixOf<K> aug(m.rows(), m.cols() + 1, k.zero());
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  auto ef = rref(k, aug);
  if (!ef.pivot_cols.empty() && ef.pivot_cols.back() == m.cols()) return std::nullopt;
  Vec<typename K::Element> v(m.cols(), k.zero());
  for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) v[ef.pivot_cols[i]] = ef.reduced(i, m.cols());
  return v;
}

template <class K>
std::optional<MatrixOf<K>> try_inverse(const K& k, const MatrixOf<K>& m) {
  if (!m.square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  MatrixOf<K> aug(n, 2 * n, k.zero());
  aug.set_block(0, 0, m);
  aug.set_block(0, n, identity(k, n));
  auto ef = rref(k, aug);
  if (ef.pivot_cols.size() < n || ef.pivot_cols[n - 1] != n - 1) return std::nullopt;
  return ef.reduced.block(0, n, n, n);
}

template <class K>
MatrixOf<K> inverse(const K& k, const MatrixOf<K>& m) {
  auto r = try_inverse(k, m);
  if (!r) throw PreconditionError("matrix is singular");
  return *r;
}

/// Determinant over a field by elimination.
template <class K>
typename K::Element det_field(const K& k, MatrixOf<K> m) {
  using E = typename K::Element;
  if (!m.square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  E d = k.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return k.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d = d * m(c, c);
    E s = inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      E f = m(i, c) * s;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return d;
}

/// Matrix-vector product.
template <class K>
Vec<typename K::Element> apply(const K& k, const MatrixOf<K>& m, const Vec<typename K::Element>& v) {
  Vec<typename K::Element> out(m.rows(), k.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    typename K::Element s = k.zero();
    for (std::size_t j = 0; j < m.cols(); ++j) s = s + m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

/// Matrix whose columns are the given vectors.
template <class K>
MatrixOf<K> from_columns(const K& k, const std::vector<Vec<typename K::Element>>& cols) {
  if (cols.empty()) throw DegenerateInput("no columns");
  MatrixOf<K> m(cols[0].size(), cols.size(), k.zero());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

/// Flatten a square matrix row-major into a vector.
template <class E>
Vec<E> flatten(const Matrix<E>& m) {
  return m.data();
}

template <class K>
MatrixOf<K> unflatten(const K& k, std::size_t n, const Vec<typename K::Element>& v) {
  MatrixOf<K> m(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

}  // namespace pidc
