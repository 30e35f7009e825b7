#include <doctest.h>

#include <vector>

#include "qrigid/graded.hpp"
#include "test_helpers.hpp"

using namespace qrigid;

namespace {

template <class S>
Matrix<S> unit_mat(std::size_t n, std::size_t i, std::size_t j) {
  Matrix<S> e(n, n);
  e(i, j) = ScalarOps<S>::one();
  return e;
}

Superoperator<ExactScalar> conjugation_by(const FiniteGroup& g, std::size_t gamma) {
  KrausTuple<ExactScalar> k{g.order(), {left_translation<ExactScalar>(g, gamma)}};
  return superop_from_kraus(k);
}

}  // namespace

TEST_CASE("builtin groups satisfy the group laws and the expected orders") {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto g = FiniteGroup::cyclic(m);
    CHECK(g.order() == m);
    CHECK(g.is_abelian());
  }
  const auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(FiniteGroup::symmetric(4).order() == 24);

  const auto d4 = FiniteGroup::dihedral(4);
  CHECK(d4.order() == 8);
  CHECK_FALSE(d4.is_abelian());
  CHECK(FiniteGroup::dihedral(2).is_abelian());  // Klein four group

  const auto q8 = FiniteGroup::quaternion();
  CHECK(q8.order() == 8);
  CHECK_FALSE(q8.is_abelian());
  CHECK(q8.is_central(1));                  // the element -1
  CHECK(q8.mult(2, 4) == 6);                // i * j = k
  CHECK(q8.mult(4, 2) == 7);                // j * i = -k
  CHECK(q8.inverse(2) == 3);                // i^-1 = -i
  CHECK(q8.name(1) == "-1");

  for (std::size_t a = 0; a < s3.order(); ++a) {
    CHECK(s3.mult(a, s3.inverse(a)) == 0);
    CHECK(s3.mult(0, a) == a);
  }
}

TEST_CASE("from_table validates the axioms") {
  CHECK_NOTHROW(FiniteGroup::from_table({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(FiniteGroup::from_table({}), InvalidGroup);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1}}), InvalidGroup);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 2}}), InvalidGroup);
  CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {0, 1}}), InvalidGroup);  // 0 not identity
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), InvalidGroup);  // not Latin
  // Latin square with identity, but not associative (smallest example: order 5
  // quasigroup).
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 3, 4, 0, 1},
                                           {3, 4, 1, 2, 0},
                                           {4, 2, 0, 1, 3}}),
                  InvalidGroup);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 0}}, {"only-one"}), InvalidGroup);
}

TEST_CASE("left translations form a unitary representation") {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto id = Matrix<ExactScalar>::identity(6);
  CHECK(left_translation<ExactScalar>(s3, 0) == id);
  for (std::size_t a = 0; a < 6; ++a) {
    const auto la = left_translation<ExactScalar>(s3, a);
    CHECK(la.adjoint() * la == id);
    for (std::size_t b = 0; b < 6; ++b)
      CHECK(la * left_translation<ExactScalar>(s3, b) ==
            left_translation<ExactScalar>(s3, s3.mult(a, b)));
  }
  CHECK_THROWS_AS(left_translation<ExactScalar>(s3, 6), InvalidInput);

  const auto z3 = FiniteGroup::cyclic(3);
  const auto shift = left_translation<ExactScalar>(z3, 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(shift((i + 1) % 3, i) == ExactScalar(1));
}

TEST_CASE("conjugation moves a translation to the conjugated element") {
  const auto s3 = FiniteGroup::symmetric(3);
  const std::size_t swap01 = 2;   // permutation 102
  const std::size_t cycle = 3;    // permutation 120
  const auto phi = conjugation_by(s3, swap01);
  const auto x = left_translation<ExactScalar>(s3, cycle);
  const std::size_t conj = s3.mult(s3.mult(swap01, cycle), s3.inverse(swap01));
  CHECK(conj != cycle);
  CHECK(phi.apply(x) == left_translation<ExactScalar>(s3, conj));
}

TEST_CASE("matrix-unit degrees are multiplicative within each side") {
  const auto s3 = FiniteGroup::symmetric(3);
  for (const auto side : {GradingSide::Left, GradingSide::Right}) {
    const auto g = Grading::regular(s3, side);
    for (std::size_t p = 0; p < 6; ++p)
      for (std::size_t q = 0; q < 6; ++q)
        for (std::size_t r = 0; r < 6; ++r)
          CHECK(s3.mult(g.unit_degree(p, q), g.unit_degree(q, r)) == g.unit_degree(p, r));
  }
}

TEST_CASE("homogeneous_degree classifies translations, the unit, and mixtures") {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto left = Grading::regular(s3, GradingSide::Left);
  const auto right = Grading::regular(s3, GradingSide::Right);

  for (std::size_t gamma = 0; gamma < 6; ++gamma) {
    const auto y = left_translation<ExactScalar>(s3, gamma);
    const auto h = homogeneous_degree(y, left);
    CHECK(h.kind == Homogeneity::Kind::Homogeneous);
    CHECK(h.degree == gamma);
    const auto hr = homogeneous_degree(y, right);
    if (s3.is_central(gamma)) {
      CHECK(hr.kind == Homogeneity::Kind::Homogeneous);
    } else {
      CHECK(hr.kind == Homogeneity::Kind::Mixed);
    }
  }

  const auto hid = homogeneous_degree(Matrix<ExactScalar>::identity(6), left);
  CHECK(hid.kind == Homogeneity::Kind::Homogeneous);
  CHECK(hid.degree == 0);

  CHECK(homogeneous_degree(Matrix<ExactScalar>(6, 6), left).kind == Homogeneity::Kind::Zero);

  const auto z3 = FiniteGroup::cyclic(3);
  const auto gl = Grading::regular(z3, GradingSide::Left);
  const auto mixed = unit_mat<ExactScalar>(3, 0, 1) + unit_mat<ExactScalar>(3, 1, 0);
  CHECK(homogeneous_degree(mixed, gl).kind == Homogeneity::Kind::Mixed);

  // Abelian group: a translation is homogeneous on the right side too, with
  // the inverse degree.
  const auto gr = Grading::regular(z3, GradingSide::Right);
  const auto hz = homogeneous_degree(left_translation<ExactScalar>(z3, 1), gr);
  CHECK(hz.kind == Homogeneity::Kind::Homogeneous);
  CHECK(hz.degree == z3.inverse(1));

  CHECK_THROWS_AS(homogeneous_degree(Matrix<ExactScalar>(5, 5), left), DimensionMismatch);
}

TEST_CASE("float tolerance separates noise from genuine degree mixing") {
  const auto z3 = FiniteGroup::cyclic(3);
  const auto g = Grading::regular(z3, GradingSide::Left);
  Matrix<FloatScalar> y = left_translation<FloatScalar>(z3, 1);
  y(0, 0) = FloatScalar(1e-14, 0.0);
  const auto h = homogeneous_degree(y, g);
  CHECK(h.kind == Homogeneity::Kind::Homogeneous);
  CHECK(h.degree == 1);
  y(0, 0) = FloatScalar(0.5, 0.0);
  CHECK(homogeneous_degree(y, g).kind == Homogeneity::Kind::Mixed);
}

TEST_CASE("conjugation by a transposition is not left-graded but is right-graded") {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto left = Grading::regular(s3, GradingSide::Left);
  const auto right = Grading::regular(s3, GradingSide::Right);
  const std::size_t swap01 = 2;
  const auto phi = conjugation_by(s3, swap01);

  const auto lcheck = is_graded_superop(phi, left);
  CHECK_FALSE(lcheck.graded);
  CHECK(lcheck.fail == GradedCheck::Fail::ShiftedDegree);
  // The witness image is homogeneous of the conjugated degree.
  const std::size_t expect =
      s3.mult(s3.mult(swap01, lcheck.expected_degree), s3.inverse(swap01));
  CHECK(lcheck.found_degree == expect);
  CHECK(lcheck.found_degree != lcheck.expected_degree);

  // The conjugated Kraus operator on the right-graded side: translations are
  // real, so entrywise conjugation leaves phi unchanged.
  const auto rcheck = is_graded_superop(phi, right);
  CHECK(rcheck.graded);
  CHECK(rcheck.fail == GradedCheck::Fail::None);
}

TEST_CASE("graded exactly for central elements on the left, always on the right") {
  const std::vector<FiniteGroup> nonabelian{FiniteGroup::symmetric(3),
                                            FiniteGroup::dihedral(4),
                                            FiniteGroup::quaternion()};
  for (const auto& g : nonabelian) {
    const auto left = Grading::regular(g, GradingSide::Left);
    const auto right = Grading::regular(g, GradingSide::Right);
    bool found_left_failure = false;
    for (std::size_t gamma = 0; gamma < g.order(); ++gamma) {
      const auto phi = conjugation_by(g, gamma);
      const auto lcheck = is_graded_superop(phi, left);
      CHECK(lcheck.graded == g.is_central(gamma));
      found_left_failure |= !lcheck.graded;
      CHECK(is_graded_superop(phi, right).graded);
    }
    CHECK(found_left_failure);
  }

  const auto z5 = FiniteGroup::cyclic(5);
  for (std::size_t gamma = 0; gamma < 5; ++gamma) {
    const auto phi = conjugation_by(z5, gamma);
    CHECK(is_graded_superop(phi, Grading::regular(z5, GradingSide::Left)).graded);
    CHECK(is_graded_superop(phi, Grading::regular(z5, GradingSide::Right)).graded);
  }
}

TEST_CASE("a two-term Kraus sum produces a mixed-image witness") {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto left = Grading::regular(s3, GradingSide::Left);
  KrausTuple<ExactScalar> k{6, {Matrix<ExactScalar>::identity(6),
                                left_translation<ExactScalar>(s3, 2)}};
  const auto check = is_graded_superop(superop_from_kraus(k), left);
  CHECK_FALSE(check.graded);
  CHECK(check.fail == GradedCheck::Fail::MixedImage);

  Superoperator<ExactScalar> wrong{5, Matrix<ExactScalar>::identity(25)};
  CHECK_THROWS_AS(is_graded_superop(wrong, left), DimensionMismatch);
}
