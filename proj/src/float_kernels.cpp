#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qrigid/linalg.hpp"

namespace qrigid {

namespace {

using EMatRow =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXcd to_eigen(const Matrix<FloatScalar>& m) {
  return Eigen::Map<const EMatRow>(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                   static_cast<Eigen::Index>(m.cols()));
}

Matrix<FloatScalar> from_eigen(const Eigen::MatrixXcd& e) {
  Matrix<FloatScalar> r(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return r;
}

double vec_norm(const std::vector<FloatScalar>& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

FloatRank float_rank(const Matrix<FloatScalar>& m, double rel_tol) {
  FloatRank out;
  if (m.rows() == 0 || m.cols() == 0) return out;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  out.sigma_max = sv(0);
  out.sigma_min = sv(sv.size() - 1);
  if (out.sigma_max > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * out.sigma_max) ++out.rank;
  }
  return out;
}

std::vector<double> singular_values(const Matrix<FloatScalar>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

EigHResult eig_hermitian(const Matrix<FloatScalar>& m, double herm_tol) {
  if (!is_hermitian(m, herm_tol)) throw NotHermitian("eig_hermitian input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
  if (es.info() != Eigen::Success) throw Error("eig_hermitian: solver failed");
  EigHResult out;
  const auto& ev = es.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = from_eigen(es.eigenvectors());
  return out;
}

double min_eig_hermitian(const Matrix<FloatScalar>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m),
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("min_eig_hermitian: solver failed");
  return es.eigenvalues()(0);
}

std::vector<std::vector<FloatScalar>> float_nullspace(const Matrix<FloatScalar>& m,
                                                      double rel_tol) {
  const std::size_t cols = m.cols();
  if (m.rows() == 0) {
    std::vector<std::vector<FloatScalar>> full;
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<FloatScalar> e(cols, FloatScalar(0));
      e[j] = FloatScalar(1);
      full.push_back(std::move(e));
    }
    return full;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::size_t rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * smax) ++rank;
  const Eigen::MatrixXcd& v = svd.matrixV();
  std::vector<std::vector<FloatScalar>> basis;
  for (std::size_t j = rank; j < cols; ++j) {
    std::vector<FloatScalar> b(cols);
    for (std::size_t i = 0; i < cols; ++i)
      b[i] = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    basis.push_back(std::move(b));
  }
  return basis;
}

std::vector<std::vector<FloatScalar>> float_column_space(const Matrix<FloatScalar>& m,
                                                         double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::size_t rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * smax) ++rank;
  const Eigen::MatrixXcd& u = svd.matrixU();
  std::vector<std::vector<FloatScalar>> basis;
  for (std::size_t j = 0; j < rank; ++j) {
    std::vector<FloatScalar> b(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      b[i] = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    basis.push_back(std::move(b));
  }
  return basis;
}

Matrix<FloatScalar> float_inverse(const Matrix<FloatScalar>& m) {
  if (!m.is_square()) throw DimensionMismatch("float_inverse of non-square matrix");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(m));
  if (!lu.isInvertible()) throw SingularMatrix("float_inverse: singular input");
  return from_eigen(lu.inverse());
}

std::vector<std::vector<FloatScalar>> orthonormalize_vectors(
    const std::vector<std::vector<FloatScalar>>& vecs, double rel_tol) {
  std::vector<std::vector<FloatScalar>> q;
  for (const auto& v0 : vecs) {
    std::vector<FloatScalar> v = v0;
    if (!q.empty() && v.size() != q[0].size())
      throw DimensionMismatch("orthonormalize_vectors ragged input");
    const double orig = vec_norm(v);
    if (orig == 0.0) throw DegenerateSystem("orthonormalize_vectors: zero vector");
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) {
        FloatScalar coeff(0);
        for (std::size_t k = 0; k < v.size(); ++k) coeff += std::conj(u[k]) * v[k];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= coeff * u[k];
      }
    }
    const double res = vec_norm(v);
    if (res <= rel_tol * orig)
      throw DegenerateSystem("orthonormalize_vectors: dependent input");
    for (auto& x : v) x /= res;
    q.push_back(std::move(v));
  }
  return q;
}

}  // namespace qrigid
