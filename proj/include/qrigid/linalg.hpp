#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qrigid/matrix.hpp"

namespace qrigid {

// ---------------------------------------------------------------------------
// Trace functionals and the Hilbert-Schmidt inner product
// ---------------------------------------------------------------------------

template <class S>
S trace_functional(const Matrix<S>& x, TraceMode mode = TraceMode::Normalized) {
  return apply_trace_mode(x.trace(), x.rows(), mode);
}

// <x, y> = tau(x* y), conjugate-linear in the first slot. Computed as an
// entrywise sum, Tr(x* y) = sum_ij conj(x_ij) y_ij.
template <class S>
S hs_inner(const Matrix<S>& x, const Matrix<S>& y, TraceMode mode = TraceMode::Normalized) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || !x.is_square())
    throw DimensionMismatch("hs_inner operands");
  S t = ScalarOps<S>::zero();
  for (std::size_t k = 0; k < x.data().size(); ++k)
    t += ScalarOps<S>::conj(x.data()[k]) * y.data()[k];
  return apply_trace_mode(t, x.rows(), mode);
}

// Gram matrix G_ij = tau(X_i* X_j). With hermitian_inputs the adjoint is
// dropped, G_ij = tau(X_i X_j), which is what the degree-matrix formulas use.
template <class S>
Matrix<S> gram(const std::vector<Matrix<S>>& mats, TraceMode mode = TraceMode::Normalized,
               bool hermitian_inputs = false) {
  if (mats.empty()) throw EmptyTuple("gram of empty tuple");
  const std::size_t d = mats.size();
  const std::size_t n = mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("gram: ragged tuple");
  Matrix<S> g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S t = ScalarOps<S>::zero();
      if (hermitian_inputs) {
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) t += mats[i](a, b) * mats[j](b, a);
      } else {
        for (std::size_t k = 0; k < n * n; ++k)
          t += ScalarOps<S>::conj(mats[i].data()[k]) * mats[j].data()[k];
      }
      g(i, j) = apply_trace_mode(t, n, mode);
    }
  return g;
}

template <class S>
double frob_norm(const Matrix<S>& x) {
  return std::sqrt(ScalarOps<S>::real_to_double(x.frob_norm_sq()));
}

template <class S>
double frob_dist(const Matrix<S>& a, const Matrix<S>& b) {
  return frob_norm(a - b);
}

// ---------------------------------------------------------------------------
// Structural predicates
// ---------------------------------------------------------------------------

template <class S>
bool is_hermitian(const Matrix<S>& x, double tol) {
  if (!x.is_square()) return false;
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    (void)tol;
    return x == x.adjoint();
  } else {
    return frob_dist(x, x.adjoint()) <= tol * (1.0 + frob_norm(x));
  }
}

template <class S>
bool is_traceless(const Matrix<S>& x, double tol = kStructureTol) {
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    (void)tol;
    return x.trace().is_zero();
  } else {
    return std::abs(x.trace()) <= tol * (1.0 + frob_norm(x));
  }
}

// ---------------------------------------------------------------------------
// Exact kernels (Gaussian rationals)
// ---------------------------------------------------------------------------

struct ExactRank {
  std::size_t rank = 0;
  bool det_known = false;   // true when the input was square
  ExactScalar det;          // exact determinant, zero when rank-deficient
};

// Fraction-free (Bareiss) elimination with full pivoting. Intermediate
// entries are minors of the input, so all divisions are exact.
ExactRank exact_rank_det(Matrix<ExactScalar> a);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> exact_rref(Matrix<ExactScalar>& a);

// Basis of {v : a v = 0}.
std::vector<std::vector<ExactScalar>> exact_nullspace(const Matrix<ExactScalar>& a);

// Indices of a column basis of the column space.
std::vector<std::size_t> exact_pivot_columns(const Matrix<ExactScalar>& a);

Matrix<ExactScalar> exact_inverse(const Matrix<ExactScalar>& a);

// Positive semidefiniteness via LDL* with greedy diagonal pivoting: pivot on
// the largest remaining diagonal entry; if every remaining diagonal is <= 0
// the matrix is PSD iff the remaining block is zero.
bool exact_is_psd(const Matrix<ExactScalar>& a);

// ---------------------------------------------------------------------------
// Float kernels (Eigen-backed, see float_kernels.cpp)
// ---------------------------------------------------------------------------

struct FloatRank {
  std::size_t rank = 0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;  // smallest singular value of the full matrix
};

FloatRank float_rank(const Matrix<FloatScalar>& m, double rel_tol);

std::vector<double> singular_values(const Matrix<FloatScalar>& m);

struct EigHResult {
  std::vector<double> values;   // ascending
  Matrix<FloatScalar> vectors;  // columns are eigenvectors
};

EigHResult eig_hermitian(const Matrix<FloatScalar>& m, double herm_tol = 1e-10);

inline EigHResult eig_hermitian(const Matrix<ExactScalar>&, double = 0.0) {
  throw ExactBackendUnsupported("eig_hermitian needs the float backend");
}

double min_eig_hermitian(const Matrix<FloatScalar>& m);

std::vector<std::vector<FloatScalar>> float_nullspace(const Matrix<FloatScalar>& m,
                                                      double rel_tol);

Matrix<FloatScalar> float_inverse(const Matrix<FloatScalar>& m);

// Orthonormal basis of the column space (left singular vectors).
std::vector<std::vector<FloatScalar>> float_column_space(const Matrix<FloatScalar>& m,
                                                         double rel_tol);

// Modified Gram-Schmidt (with one reorthogonalization pass) on a list of
// vectors. Throws DegenerateSystem when the inputs are dependent.
std::vector<std::vector<FloatScalar>> orthonormalize_vectors(
    const std::vector<std::vector<FloatScalar>>& vecs, double rel_tol);

// ---------------------------------------------------------------------------
// Backend-dispatching helpers
// ---------------------------------------------------------------------------

template <class S>
Matrix<S> stack_rows(const std::vector<std::vector<S>>& rows) {
  if (rows.empty()) return Matrix<S>();
  Matrix<S> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw DimensionMismatch("stack_rows ragged");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class S>
std::size_t matrix_rank(const Matrix<S>& m, double rel_tol) {
  if (m.empty()) return 0;
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    return exact_rank_det(m).rank;
  } else {
    return float_rank(m, rel_tol).rank;
  }
}

template <class S>
std::size_t rank_of_vectors(const std::vector<std::vector<S>>& rows, double rel_tol) {
  return matrix_rank(stack_rows(rows), rel_tol);
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    return exact_inverse(m);
  } else {
    return float_inverse(m);
  }
}

template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& m, double rel_tol) {
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    (void)rel_tol;
    return exact_nullspace(m);
  } else {
    return float_nullspace(m, rel_tol);
  }
}

template <class S>
std::vector<std::vector<S>> column_space_basis(const Matrix<S>& m, double rel_tol) {
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    (void)rel_tol;
    std::vector<std::vector<S>> cols;
    for (std::size_t j : exact_pivot_columns(m)) {
      std::vector<S> c(m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
      cols.push_back(std::move(c));
    }
    return cols;
  } else {
    return float_column_space(m, rel_tol);
  }
}

// Incrementally maintained span of vectors; used by the algebra-closure
// oracle. Exact mode keeps an echelonized copy, float mode an orthonormal
// one (Gram-Schmidt, re-projected twice).
template <class S>
class IncrementalSpan {
 public:
  explicit IncrementalSpan(double rel_tol) : rel_tol_(rel_tol) {}

  std::size_t dim() const { return basis_.size(); }

  // The row stored by the last successful insert: the pivot-reduced vector on
  // the exact path, the orthonormalized residual on the float path.
  const std::vector<S>& last_row() const { return basis_.back(); }

  // Returns true when v was independent of the current span (and was added).
  bool insert(std::vector<S> v) {
    if constexpr (ScalarOps<S>::backend == Backend::Exact) {
      // Basis rows are kept mutually reduced (1 at own pivot, 0 at the
      // others), so one pass over them reduces v completely.
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        const S lead = v[pivots_[k]];
        if (ScalarOps<S>::is_zero(lead)) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= lead * basis_[k][j];
      }
      std::size_t piv = v.size();
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!ScalarOps<S>::is_zero(v[j])) {
          piv = j;
          break;
        }
      if (piv == v.size()) return false;
      const S inv_lead = ScalarOps<S>::one() / v[piv];
      for (auto& x : v) x *= inv_lead;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        const S c = basis_[k][piv];
        if (ScalarOps<S>::is_zero(c)) continue;
        for (std::size_t j = 0; j < v.size(); ++j) basis_[k][j] -= c * v[j];
      }
      pivots_.push_back(piv);
      basis_.push_back(std::move(v));
      return true;
    } else {
      const double orig = std::sqrt(norm_sq(v));
      if (orig == 0.0) return false;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis_) {
          S coeff = ScalarOps<S>::zero();
          for (std::size_t j = 0; j < v.size(); ++j)
            coeff += ScalarOps<S>::conj(b[j]) * v[j];
          for (std::size_t j = 0; j < v.size(); ++j) v[j] -= coeff * b[j];
        }
      const double res = std::sqrt(norm_sq(v));
      if (res <= rel_tol_ * orig) return false;
      for (auto& x : v) x /= res;
      pivots_.push_back(0);
      basis_.push_back(std::move(v));
      return true;
    }
  }

 private:
  static double norm_sq(const std::vector<S>& v) {
    double s = 0;
    for (const auto& x : v) s += ScalarOps<S>::real_to_double(ScalarOps<S>::norm_sq(x));
    return s;
  }

  double rel_tol_;
  std::vector<std::vector<S>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace qrigid
