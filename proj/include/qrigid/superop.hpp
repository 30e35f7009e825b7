#pragma once

#include <cstddef>
#include <vector>

#include "qrigid/linalg.hpp"
#include "qrigid/opsys.hpp"

namespace qrigid {

template <class S>
struct KrausTuple {
  std::size_t n = 0;
  std::vector<Matrix<S>> mats;

  std::size_t count() const { return mats.size(); }
};

// Linear map on M_n stored as its n^2 x n^2 matrix in the row-major
// vectorization, so column (i*n + j) is vec of the image of E_ij.
template <class S>
struct Superoperator {
  std::size_t n = 0;
  Matrix<S> rep;

  static Superoperator identity(std::size_t n) {
    return Superoperator{n, Matrix<S>::identity(n * n)};
  }

  Matrix<S> apply(const Matrix<S>& x) const {
    if (x.rows() != n || x.cols() != n) throw DimensionMismatch("superoperator apply");
    const std::vector<S>& in = x.data();
    std::vector<S> out(n * n, ScalarOps<S>::zero());
    for (std::size_t i = 0; i < n * n; ++i)
      for (std::size_t j = 0; j < n * n; ++j) {
        if (ScalarOps<S>::is_zero(rep(i, j))) continue;
        out[i] += rep(i, j) * in[j];
      }
    return unvec(out, n);
  }

  // Image of the matrix unit with vec index c.
  Matrix<S> unit_image(std::size_t c) const {
    Matrix<S> m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m.data()[i] = rep(i, c);
    return m;
  }
};

// Phi(x) = sum_l Y_l x Y_l*; with row-major vec this is sum_l Y_l kron conj(Y_l).
template <class S>
Superoperator<S> superop_from_kraus(const KrausTuple<S>& k) {
  if (k.mats.empty()) throw EmptyTuple("Kraus list is empty");
  for (const auto& y : k.mats)
    if (y.rows() != k.n || y.cols() != k.n) throw DimensionMismatch("Kraus operator shape");
  Superoperator<S> p{k.n, Matrix<S>(k.n * k.n, k.n * k.n)};
  for (const auto& y : k.mats) p.rep += kron(y, y.conj());
  return p;
}

// Quantum adjacency matrix of the complete quantum graph on M_n:
// x -> n Tr(x) 1. Rational entries, so it exists in both backends.
template <class S>
Superoperator<S> complete_superop(std::size_t n) {
  Superoperator<S> p{n, Matrix<S>(n * n, n * n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i)
      p.rep(r * n + r, i * n + i) = ScalarOps<S>::from_int(static_cast<long>(n));
  return p;
}

// Quantum adjacency matrix of the operator system s: A x = sum_i X_i x X_i*
// over a basis X_i of s that is orthonormal for the normalized trace. The
// result depends on s only through its span.
inline Superoperator<FloatScalar> adjacency_from_system(const OperatorSystem<FloatScalar>& s,
                                                        const TolerancePolicy& tol = {}) {
  const std::size_t n = s.n;
  if (n == 0 || s.basis.empty()) throw InvalidInput("adjacency_from_system: empty system");
  std::vector<std::vector<FloatScalar>> cols;
  cols.reserve(s.basis.size());
  for (const auto& b : s.basis) {
    if (b.rows() != n || b.cols() != n) throw DimensionMismatch("system entry shape");
    cols.push_back(vec(b));
  }
  const auto q = orthonormalize_vectors(cols, tol.rank_rel_tol);
  // The unit must lie in the span for s to be an operator system.
  std::vector<FloatScalar> u = vec(Matrix<FloatScalar>::identity(n));
  for (const auto& b : q) {
    FloatScalar coeff(0);
    for (std::size_t k = 0; k < u.size(); ++k) coeff += std::conj(b[k]) * u[k];
    for (std::size_t k = 0; k < u.size(); ++k) u[k] -= coeff * b[k];
  }
  double res = 0;
  for (const auto& x : u) res += std::norm(x);
  if (std::sqrt(res) > kStructureTol * std::sqrt(static_cast<double>(n)))
    throw InvalidInput("adjacency_from_system: unit not in span");
  Superoperator<FloatScalar> p{n, Matrix<FloatScalar>(n * n, n * n)};
  const double root_n = std::sqrt(static_cast<double>(n));
  for (const auto& b : q) {
    Matrix<FloatScalar> x = unvec(b, n);
    x *= FloatScalar(root_n, 0.0);  // orthonormal for tau = Tr/n
    p.rep += kron(x, x.conj());
  }
  return p;
}

inline Superoperator<ExactScalar> adjacency_from_system(const OperatorSystem<ExactScalar>&,
                                                        const TolerancePolicy& = {}) {
  throw ExactBackendUnsupported("adjacency_from_system needs the float backend");
}

// m (A kron B) m* where m is multiplication M_n kron M_n -> M_n and the
// adjoint m* is taken for the delta-form trace tau = n Tr. On matrix units,
//   m* E_ij = (1/n) sum_k E_ik kron E_kj,
// so the product acts by E_ij -> (1/n) sum_k A(E_ik) B(E_kj). With A = B = id
// this recovers m m* = id.
template <class S>
Superoperator<S> mult_adjoint_product(const Superoperator<S>& a, const Superoperator<S>& b) {
  if (a.n != b.n) throw DimensionMismatch("mult_adjoint_product sizes");
  const std::size_t n = a.n;
  std::vector<Matrix<S>> a_img(n * n), b_img(n * n);
  for (std::size_t c = 0; c < n * n; ++c) {
    a_img[c] = a.unit_image(c);
    b_img[c] = b.unit_image(c);
  }
  Superoperator<S> out{n, Matrix<S>(n * n, n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<S> acc(n, n);
      for (std::size_t k = 0; k < n; ++k) acc += a_img[i * n + k] * b_img[k * n + j];
      for (std::size_t p = 0; p < n * n; ++p)
        out.rep(p, i * n + j) = ScalarOps<S>::div_int(acc.data()[p], static_cast<long>(n));
    }
  return out;
}

// Choi matrix in the orientation whose column (r, i) is the image of the
// dual basis vector f^r kron e_i:
//   C[(q, j), (r, i)] = Phi(E_ij)_{r, q}.
// For Phi = sum_l Y_l . Y_l* this is sum_l vec(conj Y_l) vec(conj Y_l)*, so
// Phi is completely positive iff C is PSD, and the range of C corresponds to
// the span of the entrywise-conjugated Kraus operators.
template <class S>
struct ChoiMatrix {
  std::size_t n = 0;
  Matrix<S> mat;  // n^2 x n^2, bipartite row index q*n + j
};

template <class S>
ChoiMatrix<S> choi(const Superoperator<S>& p) {
  const std::size_t n = p.n;
  ChoiMatrix<S> c{n, Matrix<S>(n * n, n * n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          c.mat(q * n + j, r * n + i) = p.rep(r * n + q, i * n + j);
  return c;
}

template <class S>
Superoperator<S> superop_from_choi(const ChoiMatrix<S>& c) {
  const std::size_t n = c.n;
  if (c.mat.rows() != n * n || c.mat.cols() != n * n)
    throw DimensionMismatch("choi matrix shape");
  Superoperator<S> p{n, Matrix<S>(n * n, n * n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          p.rep(r * n + q, i * n + j) = c.mat(q * n + j, r * n + i);
  return p;
}

// Basis of the range of C, pulled back to matrices. For a Kraus map the span
// equals span{conj(Y_l)}.
template <class S>
std::vector<Matrix<S>> choi_range_basis(const ChoiMatrix<S>& c, double rel_tol = 1e-9) {
  std::vector<Matrix<S>> out;
  for (auto& v : column_space_basis(c.mat, rel_tol)) out.push_back(unvec(v, c.n));
  return out;
}

struct AxiomReport {
  Backend backend = Backend::Float;
  bool schur_idempotent = false;
  bool reflexive = false;
  bool self_adjoint = false;
  bool completely_positive = false;
  double schur_residual = 0.0;
  double reflexive_residual = 0.0;
  double self_adjoint_residual = 0.0;
  double choi_min_eig = 0.0;  // float evidence; 0 on the exact path

  bool all_pass() const {
    return schur_idempotent && reflexive && self_adjoint && completely_positive;
  }
};

// The four quantum-graph axioms for an adjacency matrix A:
//   m (A kron A) m* = A          (Schur idempotent)
//   m (A kron id) m* = id        (reflexivity)
//   A = A* for the trace pairing (equivalently rep = rep^dagger)
//   A completely positive        (Choi matrix PSD)
template <class S>
AxiomReport check_quantum_graph(const Superoperator<S>& a, const TolerancePolicy& tol = {}) {
  AxiomReport r;
  r.backend = ScalarOps<S>::backend;
  const auto id = Superoperator<S>::identity(a.n);
  const Matrix<S> schur_diff = mult_adjoint_product(a, a).rep - a.rep;
  const Matrix<S> refl_diff = mult_adjoint_product(a, id).rep - id.rep;
  const Matrix<S> sa_diff = a.rep - a.rep.adjoint();
  r.schur_residual = frob_norm(schur_diff);
  r.reflexive_residual = frob_norm(refl_diff);
  r.self_adjoint_residual = frob_norm(sa_diff);
  const ChoiMatrix<S> c = choi(a);
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    r.schur_idempotent = schur_diff.frob_norm_sq() == 0;
    r.reflexive = refl_diff.frob_norm_sq() == 0;
    r.self_adjoint = sa_diff.frob_norm_sq() == 0;
    r.completely_positive = c.mat == c.mat.adjoint() && exact_is_psd(c.mat);
  } else {
    const double scale = 1.0 + frob_norm(a.rep);
    r.schur_idempotent = r.schur_residual <= tol.psd_tol * scale;
    r.reflexive = r.reflexive_residual <= tol.psd_tol * scale;
    r.self_adjoint = r.self_adjoint_residual <= tol.psd_tol * scale;
    Matrix<S> herm = c.mat + c.mat.adjoint();
    herm *= ScalarOps<S>::div_int(ScalarOps<S>::one(), 2);
    r.choi_min_eig = min_eig_hermitian(herm);
    const double choi_scale = 1.0 + frob_norm(c.mat);
    r.completely_positive =
        is_hermitian(c.mat, tol.psd_tol) && r.choi_min_eig >= -tol.psd_tol * choi_scale;
  }
  return r;
}

}  // namespace qrigid
