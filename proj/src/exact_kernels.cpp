#include "qrigid/linalg.hpp"

namespace qrigid {

namespace {

void swap_rows(Matrix<ExactScalar>& a, std::size_t r1, std::size_t r2) {
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

void swap_cols(Matrix<ExactScalar>& a, std::size_t c1, std::size_t c2) {
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, c1), a(i, c2));
}

}  // namespace

ExactRank exact_rank_det(Matrix<ExactScalar> a) {
  ExactRank out;
  out.det_known = a.is_square();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ExactScalar prev(1);
  int sign = 1;
  std::size_t r = 0;
  while (r < m && r < n) {
    std::size_t pi = m, pj = n;
    for (std::size_t j = r; j < n && pi == m; ++j)
      for (std::size_t i = r; i < m; ++i)
        if (!a(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == m) break;
    if (pi != r) {
      swap_rows(a, pi, r);
      sign = -sign;
    }
    if (pj != r) {
      swap_cols(a, pj, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = r + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(r, r) - a(i, r) * a(r, j)) / prev;
      a(i, r) = ExactScalar();
    }
    prev = a(r, r);
    ++r;
  }
  out.rank = r;
  if (out.det_known) {
    if (r == n && n > 0) {
      out.det = a(n - 1, n - 1);
      if (sign < 0) out.det = -out.det;
    } else if (n == 0) {
      out.det = ExactScalar(1);
    } else {
      out.det = ExactScalar();
    }
  }
  return out;
}

std::vector<std::size_t> exact_rref(Matrix<ExactScalar>& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    std::size_t pi = m;
    for (std::size_t i = r; i < m; ++i)
      if (!a(i, j).is_zero()) {
        pi = i;
        break;
      }
    if (pi == m) continue;
    if (pi != r) swap_rows(a, pi, r);
    const ExactScalar inv = ExactScalar(1) / a(r, j);
    for (std::size_t k = j; k < n; ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const ExactScalar c = a(i, j);
      if (c.is_zero()) continue;
      for (std::size_t k = j; k < n; ++k) a(i, k) -= c * a(r, k);
    }
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<ExactScalar>> exact_nullspace(const Matrix<ExactScalar>& a0) {
  Matrix<ExactScalar> a = a0;
  const std::size_t n = a.cols();
  const std::vector<std::size_t> pivots = exact_rref(a);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<ExactScalar>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<ExactScalar> v(n);
    v[f] = ExactScalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> exact_pivot_columns(const Matrix<ExactScalar>& a0) {
  Matrix<ExactScalar> a = a0;
  return exact_rref(a);
}

Matrix<ExactScalar> exact_inverse(const Matrix<ExactScalar>& a) {
  if (!a.is_square()) throw DimensionMismatch("exact_inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<ExactScalar> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = ExactScalar(1);
  }
  const std::vector<std::size_t> pivots = exact_rref(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1))
    throw SingularMatrix("exact_inverse: singular input");
  Matrix<ExactScalar> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool exact_is_psd(const Matrix<ExactScalar>& a0) {
  if (!a0.is_square() || a0 != a0.adjoint()) throw NotHermitian("exact_is_psd input");
  Matrix<ExactScalar> a = a0;
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    mpq_class best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const mpq_class& d = a(i, i).real();
      if (d < 0) return false;
      if (p == n || d > best) {
        p = i;
        best = d;
      }
    }
    if (p == n) break;
    if (best == 0) {
      // Every remaining diagonal vanishes; any surviving off-diagonal entry
      // gives a 2x2 principal minor with negative determinant.
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j] && !a(i, j).is_zero()) return false;
      }
      return true;
    }
    done[p] = true;
    const ExactScalar pivot = a(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        a(i, j) -= a(i, p) * a(p, j) / pivot;
      }
    }
  }
  return true;
}

}  // namespace qrigid
