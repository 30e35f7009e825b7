#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qrigid/scalar.hpp"

namespace qrigid {

// Dense row-major matrix over one of the two scalar backends. Kept minimal on
// purpose: the numerics that need LAPACK-grade kernels (SVD, eigensolvers) are
// float-only and live behind the functions in linalg.hpp.
template <class S>
class Matrix {
 public:
  using Scalar = S;
  using Real = typename ScalarOps<S>::Real;

  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, ScalarOps<S>::zero()) {}

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarOps<S>::one();
    return m;
  }

  // Matrix unit E_ij (1-based math convention, 0-based indices here).
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = ScalarOps<S>::one();
    return m;
  }

  static Matrix diag(const std::vector<S>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  // Row-major literal, for tests and fixtures.
  static Matrix from_rows(std::size_t rows, std::size_t cols, std::initializer_list<S> v) {
    if (v.size() != rows * cols) throw DimensionMismatch("from_rows literal size");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (const S& x : v) m.a_[k++] = x;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return a_.empty(); }

  S& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }
  const S& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }

  const std::vector<S>& data() const { return a_; }
  std::vector<S>& data() { return a_; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const S& c) {
    for (S& x : a_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& c) { return a *= c; }
  friend Matrix operator*(const S& c, Matrix a) { return a *= c; }
  friend Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (S& x : r.a_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matmul inner dimensions");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (ScalarOps<S>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix conj() const {
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ScalarOps<S>::conj(a_[k]);
    return r;
  }

  Matrix adjoint() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = ScalarOps<S>::conj((*this)(i, j));
    return r;
  }

  S trace() const {
    if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
    S t = ScalarOps<S>::zero();
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Real frob_norm_sq() const {
    Real r{};
    for (const S& x : a_) r += ScalarOps<S>::norm_sq(x);
    return r;
  }

 private:
  void require_same_shape(const Matrix& o, const char* where) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch(std::string(where) + ": shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<S> a_;
};

// Row-major vectorization: vec(x)[i*n + j] = x(i, j). Fixed project-wide; the
// Kronecker identity below and the Choi reshuffle both assume it.
template <class S>
std::vector<S> vec(const Matrix<S>& x) {
  return x.data();
}

template <class S>
Matrix<S> unvec(const std::vector<S>& v, std::size_t n) {
  if (v.size() != n * n) throw DimensionMismatch("unvec length");
  Matrix<S> m(n, n);
  m.data() = v;
  return m;
}

// Kronecker product; with row-major vec, vec(A X B) = (A kron B^T) vec(X).
template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const S& aij = a(i1, j1);
      if (ScalarOps<S>::is_zero(aij)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          r(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
    }
  return r;
}

inline Matrix<FloatScalar> exact_to_float(const Matrix<ExactScalar>& m) {
  Matrix<FloatScalar> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
  return r;
}

}  // namespace qrigid
