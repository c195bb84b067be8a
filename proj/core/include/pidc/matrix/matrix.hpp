#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pidc/errors.hpp"

namespace pidc {

/// Dense row-major matrix over an exact element type with value semantics.
/// Element types carry their own arithmetic (operators + - * ==), so the
/// matrix needs no ring context except where zero/one must be produced.
template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const E& fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  /// Square n x n filled with `fill`.
  Matrix(std::size_t n, const E& fill) : Matrix(n, n, fill) {}

  static Matrix identity(std::size_t n, const E& zero, const E& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<E>>& rows) {
    if (rows.empty() || rows[0].empty()) throw DegenerateInput("empty matrix");
    Matrix m(rows.size(), rows[0].size(), rows[0][0]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DegenerateInput("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Side length of a square matrix.
  std::size_t n() const {
    assert(rows_ == cols_);
    return rows_;
  }
  bool square() const { return rows_ == cols_; }

  E& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }
  const E& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }
  const std::vector<E>& data() const { return a_; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] + o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] - o.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_, a(0, 0));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        E s = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) s = s + a(i, k) * b(k, j);
        c(i, j) = std::move(s);
      }
    }
    return c;
  }
  friend Matrix operator*(const E& s, Matrix m) {
    for (auto& v : m.a_) v = s * v;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix t(cols_, rows_, a_.front());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  E trace() const {
    if (!square()) throw PreconditionError("trace of a non-square matrix");
    E s = (*this)(0, 0);
    for (std::size_t i = 1; i < rows_; ++i) s = s + (*this)(i, i);
    return s;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const E&>()))> {
    using T = decltype(f(std::declval<const E&>()));
    Matrix<T> m(rows_, cols_, f(a_.front()));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc, a_.front());
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<E> a_;
};

template <class E>
Matrix<E> commutator(const Matrix<E>& x, const Matrix<E>& y) {
  return x * y - y * x;
}

/// X^k for k >= 0 given the identity of the right size.
template <class E>
Matrix<E> power(const Matrix<E>& x, unsigned k, const Matrix<E>& identity) {
  Matrix<E> r = identity;
  for (unsigned i = 0; i < k; ++i) r = r * x;
  return r;
}

template <class E>
Matrix<E> direct_sum(const Matrix<E>& a, const Matrix<E>& b, const E& zero) {
  Matrix<E> m(a.rows() + b.rows(), a.cols() + b.cols(), zero);
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

}  // namespace pidc
