#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qrigid/linalg.hpp"
#include "qrigid/rng.hpp"

namespace qrigid {

template <class S>
struct OperatorTuple {
  std::size_t n = 0;
  std::vector<Matrix<S>> mats;

  std::size_t d() const { return mats.size(); }
};

// Span of the listed matrices; when contains_unit is set the unit is stored
// as basis[0].
template <class S>
struct OperatorSystem {
  std::size_t n = 0;
  std::vector<Matrix<S>> basis;
  bool contains_unit = false;

  std::size_t dim() const { return basis.size(); }
};

struct AdjoinInfo {
  bool dependent = false;    // warning-level: {1, X_1..X_d} was linearly dependent
  std::size_t span_dim = 0;  // dim span{1, X_1..X_d}
};

template <class S>
void validate_tuple(const OperatorTuple<S>& t, const TolerancePolicy& tol = {},
                    bool require_traceless = true) {
  if (t.mats.empty()) throw EmptyTuple("tuple has no matrices");
  for (const auto& x : t.mats) {
    if (x.rows() != t.n || x.cols() != t.n) throw DimensionMismatch("tuple entry shape");
    if (!is_hermitian(x, tol.psd_tol)) throw NotHermitian("tuple entry");
    if (require_traceless && !is_traceless(x)) throw NotTraceless("tuple entry");
  }
}

template <class S>
OperatorSystem<S> adjoin_unit(const OperatorTuple<S>& t, const TolerancePolicy& tol = {},
                              AdjoinInfo* info = nullptr) {
  validate_tuple(t, tol, /*require_traceless=*/true);
  OperatorSystem<S> s;
  s.n = t.n;
  s.contains_unit = true;
  s.basis.reserve(t.d() + 1);
  s.basis.push_back(Matrix<S>::identity(t.n));
  for (const auto& x : t.mats) s.basis.push_back(x);
  if (info) {
    std::vector<std::vector<S>> rows;
    rows.reserve(s.basis.size());
    for (const auto& b : s.basis) rows.push_back(vec(b));
    info->span_dim = rank_of_vectors(rows, tol.rank_rel_tol);
    info->dependent = info->span_dim < s.basis.size();
  }
  return s;
}

// Orthogonal complement of the traceless part of s inside the traceless
// matrices, with the unit adjoined back. For operator systems this is the
// reflexive quantum graph complement: dim s + dim result = n^2 + 1, and
// applying it twice returns the original span.
template <class S>
OperatorSystem<S> reflexive_complement(const OperatorSystem<S>& s,
                                       const TolerancePolicy& tol = {}) {
  const std::size_t n = s.n;
  if (n == 0) throw InvalidInput("reflexive_complement: empty system");
  const Matrix<S> unit = Matrix<S>::identity(n);
  std::vector<std::vector<S>> constraints;
  constraints.push_back(vec(unit.conj()));  // forces the solution traceless
  for (const auto& b : s.basis) {
    if (b.rows() != n || b.cols() != n) throw DimensionMismatch("system entry shape");
    Matrix<S> part = b - ScalarOps<S>::div_int(b.trace(), static_cast<long>(n)) * unit;
    constraints.push_back(vec(part.conj()));
  }
  OperatorSystem<S> out;
  out.n = n;
  out.contains_unit = true;
  out.basis.push_back(unit);
  for (auto& v : nullspace(stack_rows(constraints), tol.rank_rel_tol))
    out.basis.push_back(unvec(v, n));
  return out;
}

template <class S>
OperatorSystem<S> conjugate_system(const OperatorSystem<S>& s) {
  OperatorSystem<S> out = s;
  for (auto& b : out.basis) b = b.conj();
  return out;
}

template <class S>
OperatorSystem<S> transpose_system(const OperatorSystem<S>& s) {
  OperatorSystem<S> out = s;
  for (auto& b : out.basis) b = b.transpose();
  return out;
}

template <class S>
OperatorTuple<S> conjugate_tuple(const OperatorTuple<S>& t) {
  OperatorTuple<S> out = t;
  for (auto& m : out.mats) m = m.conj();
  return out;
}

enum class SampleShape { Generic, ZeroDiagonal, Diagonal };

inline const char* to_string(SampleShape s) {
  switch (s) {
    case SampleShape::Generic: return "generic";
    case SampleShape::ZeroDiagonal: return "zero-diagonal";
    case SampleShape::Diagonal: return "diagonal";
  }
  return "?";
}

// Draw order is part of the reproducibility contract: upper triangle in
// row-major order (real then imaginary word per entry), then the diagonal,
// then the trace projection.
template <class S>
Matrix<S> sample_traceless_hermitian(std::size_t n, CounterRng& rng,
                                     SampleShape shape = SampleShape::Generic) {
  Matrix<S> x(n, n);
  constexpr bool exact = ScalarOps<S>::backend == Backend::Exact;
  if (shape != SampleShape::Diagonal) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        S z;
        if constexpr (exact) {
          const ExactScalar re = rng.dyadic();
          const ExactScalar im = rng.dyadic();
          z = ExactScalar(re.real(), im.real());
        } else {
          const double re = rng.gaussian();
          const double im = rng.gaussian();
          z = FloatScalar(re, im) / std::sqrt(2.0);
        }
        x(i, j) = z;
        x(j, i) = ScalarOps<S>::conj(z);
      }
  }
  if (shape != SampleShape::ZeroDiagonal) {
    for (std::size_t i = 0; i < n; ++i) {
      if constexpr (exact) {
        x(i, i) = rng.dyadic();
      } else {
        x(i, i) = FloatScalar(rng.gaussian(), 0.0);
      }
    }
    const S shift = ScalarOps<S>::div_int(x.trace(), static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) x(i, i) -= shift;
  }
  return x;
}

template <class S>
OperatorTuple<S> sample_tuple(std::size_t n, std::size_t d, CounterRng& rng,
                              SampleShape shape = SampleShape::Generic) {
  OperatorTuple<S> t;
  t.n = n;
  t.mats.reserve(d);
  for (std::size_t k = 0; k < d; ++k)
    t.mats.push_back(sample_traceless_hermitian<S>(n, rng, shape));
  return t;
}

// M_3 tuple (T_1, T_2, Y_1, Y_2): the T_i span the traceless diagonal and
// Y_i carries alpha_i as its off-diagonal column/row block,
//   Y_i = [[0, |alpha_i>], [<alpha_i|, 0]].
// The alphas are expected to satisfy (2/3) Re<alpha_i, alpha_j> = delta_ij,
// which makes the Y_i orthonormal for the normalized trace.
template <class S>
OperatorTuple<S> construct_block_tuple(const std::array<S, 2>& a1, const std::array<S, 2>& a2,
                                       bool check_normalization = true,
                                       double check_tol = 1e-10) {
  if (check_normalization) {
    const auto pairing = [](const std::array<S, 2>& x, const std::array<S, 2>& y) {
      return ScalarOps<S>::conj(x[0]) * y[0] + ScalarOps<S>::conj(x[1]) * y[1];
    };
    const S s11 = pairing(a1, a1), s22 = pairing(a2, a2), s12 = pairing(a1, a2);
    if constexpr (ScalarOps<S>::backend == Backend::Exact) {
      const ExactScalar target = ExactScalar::ratio(3, 2);
      if (s11 != target || s22 != target || !(s12 + s12.conj()).is_zero())
        throw NormalizationViolated("block tuple alphas");
    } else {
      if (std::abs(s11.real() - 1.5) > check_tol || std::abs(s22.real() - 1.5) > check_tol ||
          std::abs(s12.real()) > check_tol)
        throw NormalizationViolated("block tuple alphas");
    }
  }
  OperatorTuple<S> t;
  t.n = 3;
  const S one = ScalarOps<S>::one();
  t.mats.push_back(Matrix<S>::diag({one, -one, ScalarOps<S>::zero()}));
  t.mats.push_back(Matrix<S>::diag({one, one, ScalarOps<S>::from_int(-2)}));
  for (const auto& a : {a1, a2}) {
    Matrix<S> y(3, 3);
    y(0, 2) = a[0];
    y(1, 2) = a[1];
    y(2, 0) = ScalarOps<S>::conj(a[0]);
    y(2, 1) = ScalarOps<S>::conj(a[1]);
    t.mats.push_back(y);
  }
  return t;
}

}  // namespace qrigid
