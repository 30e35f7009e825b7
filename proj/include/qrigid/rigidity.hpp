#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrigid/opsys.hpp"
#include "qrigid/rng.hpp"

namespace qrigid {

namespace detail {

// Gram matrix of the tuple (no adjoints; entries are Hermitian) plus the
// combinations B_k = sum_l (Gamma^{-1})_{kl} X_l shared by both degree
// matrices. Throws GramSingular when Gamma is not invertible.
template <class S>
std::vector<Matrix<S>> gram_inverse_combos(const OperatorTuple<S>& t, TraceMode mode,
                                           const TolerancePolicy& tol) {
  const Matrix<S> g = gram(t.mats, mode, /*hermitian_inputs=*/true);
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    if (exact_rank_det(g).rank < t.d()) throw GramSingular("dependent tuple");
  } else {
    if (float_rank(g, tol.rank_rel_tol).rank < t.d()) throw GramSingular("dependent tuple");
  }
  const Matrix<S> gi = inverse(g);
  std::vector<Matrix<S>> b;
  b.reserve(t.d());
  for (std::size_t k = 0; k < t.d(); ++k) {
    Matrix<S> acc(t.n, t.n);
    for (std::size_t l = 0; l < t.d(); ++l) acc += gi(k, l) * t.mats[l];
    b.push_back(std::move(acc));
  }
  return b;
}

// Chebyshev polynomials T_0..T_{count-1} of a Hermitian matrix affinely
// rescaled so its spectrum sits in [-1, 1]. Rescaling and the switch from
// monomials to Chebyshev polynomials are both invertible triangular changes
// of basis, so products drawn from two such families span exactly the same
// subspace as the monomial products D^i D2^j; unlike the monomials, the
// family stays uniformly bounded in operator norm, which keeps the
// vectorized products numerically independent up to n = 8 and beyond.
inline std::vector<Matrix<FloatScalar>> chebyshev_family(const Matrix<FloatScalar>& a,
                                                         std::size_t count) {
  const std::size_t n = a.rows();
  const EigHResult eig = eig_hermitian(a);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  Matrix<FloatScalar> base(n, n);
  if (hi - lo > 1e-14 * (std::abs(lo) + std::abs(hi) + 1.0)) {
    base = a;
    for (std::size_t i = 0; i < n; ++i) base(i, i) -= FloatScalar((lo + hi) / 2.0, 0.0);
    base *= FloatScalar(2.0 / (hi - lo), 0.0);
  }  // scalar matrices rescale to zero; the family then degenerates to span{1}
  std::vector<Matrix<FloatScalar>> fam;
  fam.reserve(count);
  fam.push_back(Matrix<FloatScalar>::identity(n));
  if (count > 1) fam.push_back(base);
  for (std::size_t k = 2; k < count; ++k) {
    Matrix<FloatScalar> next = base * fam[k - 1];
    next *= FloatScalar(2.0, 0.0);
    next -= fam[k - 2];
    fam.push_back(std::move(next));
  }
  return fam;
}

}  // namespace detail

// D = sum_ij (Gamma^{-1})_ij X_i X_j, the image of the unit under the quantum
// adjacency matrix built from the tuple's span (unit excluded; adjoining the
// unit to the Kraus list only shifts D by 1).
template <class S>
Matrix<S> degree_matrix(const OperatorTuple<S>& t, TraceMode mode = TraceMode::Normalized,
                        const TolerancePolicy& tol = {}) {
  validate_tuple(t, tol, /*require_traceless=*/false);
  const auto b = detail::gram_inverse_combos(t, mode, tol);
  Matrix<S> d(t.n, t.n);
  for (std::size_t k = 0; k < t.d(); ++k) d += t.mats[k] * b[k];
  return d;
}

// D2 = sum_ijkl (Gamma^{-1})_ij (Gamma^{-1})_kl X_k X_i X_j X_l
//    = sum_kl (Gamma^{-1})_kl X_k D X_l.
template <class S>
Matrix<S> second_degree_matrix(const OperatorTuple<S>& t,
                               TraceMode mode = TraceMode::Normalized,
                               const TolerancePolicy& tol = {}) {
  validate_tuple(t, tol, /*require_traceless=*/false);
  const auto b = detail::gram_inverse_combos(t, mode, tol);
  Matrix<S> d(t.n, t.n);
  for (std::size_t k = 0; k < t.d(); ++k) d += t.mats[k] * b[k];
  Matrix<S> d2(t.n, t.n);
  for (std::size_t k = 0; k < t.d(); ++k) d2 += t.mats[k] * d * b[k];
  return d2;
}

template <class S>
std::pair<Matrix<S>, Matrix<S>> degree_matrices(const OperatorTuple<S>& t,
                                                TraceMode mode = TraceMode::Normalized,
                                                const TolerancePolicy& tol = {}) {
  const auto b = detail::gram_inverse_combos(t, mode, tol);
  Matrix<S> d(t.n, t.n);
  for (std::size_t k = 0; k < t.d(); ++k) d += t.mats[k] * b[k];
  Matrix<S> d2(t.n, t.n);
  for (std::size_t k = 0; k < t.d(); ++k) d2 += t.mats[k] * d * b[k];
  return {std::move(d), std::move(d2)};
}

struct PowersResult {
  std::size_t n = 0;
  std::size_t rank = 0;
  bool certified = false;
  double sigma_max = 0.0;  // float evidence (of the row-equilibrated matrix)
  double sigma_min = 0.0;
  bool det_known = false;  // exact evidence
  ExactScalar det;

  double margin() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

// Rank of the n^2 vectorized products D^i D2^j, i, j < n. Full rank means
// {D, D2} generate M_n, which certifies that the quantum automorphism group
// of the associated quantum graph is trivial. The exact route ranks the
// literal monomial products. The float route ranks the same subspace through
// products of Chebyshev families of D and D2 (see chebyshev_family: an exact
// change of basis), because the monomial rows collapse below any meaningful
// singular-value cutoff in double precision once n reaches 5 or so; rows are
// additionally scaled to unit Frobenius norm, which never changes the rank.
template <class S>
PowersResult powers_basis_certificate(const Matrix<S>& d1, const Matrix<S>& d2,
                                      const TolerancePolicy& tol = {}) {
  if (!d1.is_square() || d1.rows() != d2.rows() || !d2.is_square())
    throw DimensionMismatch("powers_basis_certificate inputs");
  const std::size_t n = d1.rows();
  if (n == 0) throw DimensionMismatch("empty powers certificate");
  std::vector<Matrix<S>> dp(n), d2p(n);
  if constexpr (ScalarOps<S>::backend == Backend::Float) {
    dp = detail::chebyshev_family(d1, n);
    d2p = detail::chebyshev_family(d2, n);
  } else {
    dp[0] = Matrix<S>::identity(n);
    d2p[0] = Matrix<S>::identity(n);
    for (std::size_t i = 1; i < n; ++i) {
      dp[i] = dp[i - 1] * d1;
      d2p[i] = d2p[i - 1] * d2;
    }
  }
  std::vector<std::vector<S>> rows;
  rows.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<S> p = dp[i] * d2p[j];
      if constexpr (ScalarOps<S>::backend == Backend::Float) {
        const double nrm = frob_norm(p);
        if (nrm > 0.0) p *= FloatScalar(1.0 / nrm, 0.0);
      }
      rows.push_back(vec(p));
    }
  PowersResult out;
  out.n = n;
  if constexpr (ScalarOps<S>::backend == Backend::Exact) {
    const ExactRank er = exact_rank_det(stack_rows(rows));
    out.rank = er.rank;
    out.det_known = er.det_known;
    out.det = er.det;
    out.certified = out.rank == n * n;
  } else {
    const FloatRank fr = float_rank(stack_rows(rows), tol.rank_rel_tol);
    out.rank = fr.rank;
    out.sigma_max = fr.sigma_max;
    out.sigma_min = fr.sigma_min;
    out.certified = out.rank == n * n && fr.sigma_min > tol.cert_margin * fr.sigma_max;
  }
  return out;
}

// Dimension of the unital algebra generated by the given matrices, computed
// by breadth-first span closure under left multiplication by the generators.
// The number of insertions is capped by n^2, so the loop always terminates.
// The queue holds the span's own reduced rows, not the raw products: on the
// float path each new multiplicand is then orthonormal to everything already
// seen, so a fresh direction enters products at full magnitude instead of
// decaying with the word length and slipping under the rank tolerance.
template <class S>
std::size_t generated_algebra_dimension(std::size_t n, const std::vector<Matrix<S>>& gens,
                                        const TolerancePolicy& tol = {}) {
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("generator shape");
  IncrementalSpan<S> span(tol.rank_rel_tol);
  std::vector<Matrix<S>> queue;
  const Matrix<S> id = Matrix<S>::identity(n);
  span.insert(vec(id));
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size() && span.dim() < n * n; ++head) {
    const Matrix<S> b = queue[head];  // copy: queue may reallocate below
    for (const auto& g : gens) {
      if (span.dim() >= n * n) break;
      if (span.insert(vec(g * b))) queue.push_back(unvec(span.last_row(), n));
    }
  }
  return span.dim();
}

struct RigidityCertificate {
  std::size_t n = 0;
  std::size_t d = 0;
  Backend backend = Backend::Float;
  TraceMode mode = TraceMode::Normalized;
  std::size_t rank = 0;
  bool certified = false;  // CERTIFIED_RIGID vs INCONCLUSIVE
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  std::string exact_det;                    // exact route evidence
  std::optional<std::size_t> closure_dim;   // secondary oracle, set when inconclusive

  double margin() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
  const char* verdict() const { return certified ? "CERTIFIED_RIGID" : "INCONCLUSIVE"; }
};

// Full pipeline on a traceless Hermitian tuple. The certificate is one-sided:
// certified instances have trivial quantum automorphism group, inconclusive
// ones are simply not decided (the closure oracle is then run as a second,
// independently recorded attempt).
template <class S>
RigidityCertificate certify_tuple(const OperatorTuple<S>& t,
                                  TraceMode mode = TraceMode::Normalized,
                                  const TolerancePolicy& tol = {}) {
  validate_tuple(t, tol, /*require_traceless=*/true);
  auto [d1, d2] = degree_matrices(t, mode, tol);
  const PowersResult pr = powers_basis_certificate(d1, d2, tol);
  RigidityCertificate c;
  c.n = t.n;
  c.d = t.d();
  c.backend = ScalarOps<S>::backend;
  c.mode = mode;
  c.rank = pr.rank;
  c.certified = pr.certified;
  c.sigma_max = pr.sigma_max;
  c.sigma_min = pr.sigma_min;
  if (pr.det_known) c.exact_det = pr.det.to_string();
  if (!c.certified)
    c.closure_dim = generated_algebra_dimension(t.n, std::vector<Matrix<S>>{d1, d2}, tol);
  return c;
}

// ---------------------------------------------------------------------------
// Monte Carlo sweep (float backend)
// ---------------------------------------------------------------------------

enum class SweepExec { Serial, OpenMP };

struct SweepConfig {
  std::vector<std::size_t> ns;
  // Inclusive override; by default each n gets d in {2, ..., n^2 - 3}.
  std::optional<std::pair<std::size_t, std::size_t>> d_range;
  std::size_t trials = 5;
  RngSpec rng{};
  TraceMode mode = TraceMode::Normalized;
  TolerancePolicy tol{};
  SampleShape shape = SampleShape::Generic;
  SweepExec exec = SweepExec::OpenMP;
  int max_threads = 0;  // 0: QRIGID_THREADS, then the OpenMP default
};

struct SweepCell {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t trials = 0;
  std::size_t certified = 0;
  double min_margin = 0.0;  // min over all trials in the cell
  double seconds = 0.0;     // accumulated per-trial time, not canonical
};

struct SweepReport {
  RngSpec rng;
  TraceMode mode = TraceMode::Normalized;
  TolerancePolicy tol;
  std::size_t trials = 0;
  std::vector<SweepCell> cells;

  bool all_cells_certified() const {
    for (const auto& c : cells)
      if (c.certified == 0) return false;
    return true;
  }
  std::size_t total_trials() const {
    std::size_t s = 0;
    for (const auto& c : cells) s += c.trials;
    return s;
  }
  std::size_t total_certified() const {
    std::size_t s = 0;
    for (const auto& c : cells) s += c.certified;
    return s;
  }
};

SweepReport run_sweep(const SweepConfig& cfg);

}  // namespace qrigid
