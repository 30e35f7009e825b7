#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qrigid/superop.hpp"

namespace qrigid {

// Finite group given by its multiplication table. Element 0 is always the
// identity; from_table validates that together with the group laws.
class FiniteGroup {
 public:
  static FiniteGroup cyclic(std::size_t m);
  static FiniteGroup symmetric(std::size_t m);  // permutations in lexicographic order
  static FiniteGroup dihedral(std::size_t m);   // order 2m symmetries of the m-gon
  static FiniteGroup quaternion();              // Q8
  static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table,
                                std::vector<std::string> names = {});

  std::size_t order() const { return table_.size(); }
  std::size_t mult(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  bool is_abelian() const;
  bool is_central(std::size_t g) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;
  void finalize();  // validates the laws and fills inverses

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inv_;
  std::vector<std::string> names_;
};

enum class GradingSide { Left, Right };

inline const char* to_string(GradingSide s) {
  return s == GradingSide::Left ? "left" : "right";
}

// Degree assignment for the basis vectors of C^n. A matrix unit e_pq is
// homogeneous of degree
//   Left:  s_p s_q^{-1}      (grading by left translations)
//   Right: s_p^{-1} s_q      (grading by right translations)
// where s_i is the degree of e_i. The regular grading takes n = |G| and
// s_i = i.
struct Grading {
  FiniteGroup group;
  GradingSide side = GradingSide::Left;
  std::vector<std::size_t> deg;

  static Grading regular(FiniteGroup g, GradingSide side) {
    Grading out{std::move(g), side, {}};
    out.deg.resize(out.group.order());
    for (std::size_t i = 0; i < out.deg.size(); ++i) out.deg[i] = i;
    return out;
  }

  std::size_t n() const { return deg.size(); }

  std::size_t unit_degree(std::size_t p, std::size_t q) const {
    if (side == GradingSide::Left) return group.mult(deg[p], group.inverse(deg[q]));
    return group.mult(group.inverse(deg[p]), deg[q]);
  }
};

// Permutation matrix of the left translation e_i -> e_{gamma i}.
template <class S>
Matrix<S> left_translation(const FiniteGroup& g, std::size_t gamma) {
  if (gamma >= g.order()) throw InvalidInput("left_translation: no such element");
  Matrix<S> m(g.order(), g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    m(g.mult(gamma, i), i) = ScalarOps<S>::one();
  return m;
}

struct Homogeneity {
  enum class Kind { Zero, Homogeneous, Mixed };
  Kind kind = Kind::Zero;  // Zero doubles as "homogeneous of every degree"
  std::size_t degree = 0;  // meaningful only when kind == Homogeneous
};

template <class S>
Homogeneity homogeneous_degree(const Matrix<S>& x, const Grading& g, double tol = 1e-10) {
  if (x.rows() != g.n() || x.cols() != g.n()) throw DimensionMismatch("graded matrix shape");
  const double cutoff = tol * (1.0 + frob_norm(x));
  Homogeneity h;
  bool found = false;
  for (std::size_t p = 0; p < x.rows(); ++p)
    for (std::size_t q = 0; q < x.cols(); ++q) {
      bool significant;
      if constexpr (ScalarOps<S>::backend == Backend::Exact) {
        significant = !x(p, q).is_zero();
      } else {
        significant = std::abs(x(p, q)) > cutoff;
      }
      if (!significant) continue;
      const std::size_t deg = g.unit_degree(p, q);
      if (!found) {
        found = true;
        h.kind = Homogeneity::Kind::Homogeneous;
        h.degree = deg;
      } else if (deg != h.degree) {
        h.kind = Homogeneity::Kind::Mixed;
        return h;
      }
    }
  return h;
}

struct GradedCheck {
  enum class Fail { None, MixedImage, ShiftedDegree };

  bool graded = true;
  Fail fail = Fail::None;
  std::size_t p = 0, q = 0;           // witness matrix unit when !graded
  std::size_t expected_degree = 0;
  std::size_t found_degree = 0;       // for ShiftedDegree
};

// A superoperator is graded when it preserves degrees: the image of every
// matrix unit of degree delta is zero or homogeneous of the same delta. A
// homogeneous image of a different degree is a failure too (translation
// conjugations produce exactly that), reported with its own witness kind.
template <class S>
GradedCheck is_graded_superop(const Superoperator<S>& phi, const Grading& g,
                              double tol = 1e-10) {
  const std::size_t n = g.n();
  if (phi.n != n) throw DimensionMismatch("superoperator vs grading size");
  GradedCheck out;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const Homogeneity h = homogeneous_degree(phi.unit_image(p * n + q), g, tol);
      if (h.kind == Homogeneity::Kind::Zero) continue;
      const std::size_t expected = g.unit_degree(p, q);
      if (h.kind == Homogeneity::Kind::Mixed) {
        out.graded = false;
        out.fail = GradedCheck::Fail::MixedImage;
        out.p = p;
        out.q = q;
        out.expected_degree = expected;
        return out;
      }
      if (h.degree != expected) {
        out.graded = false;
        out.fail = GradedCheck::Fail::ShiftedDegree;
        out.p = p;
        out.q = q;
        out.expected_degree = expected;
        out.found_degree = h.degree;
        return out;
      }
    }
  return out;
}

}  // namespace qrigid
