#include <doctest.h>

#include <array>
#include <cmath>

#include "qrigid/fixture.hpp"
#include "qrigid/opsys.hpp"
#include "qrigid/rigidity.hpp"
#include "test_helpers.hpp"

using namespace qrigid;

namespace {

Matrix<ExactScalar> diag3(long a, long b, long c) {
  return Matrix<ExactScalar>::diag({ExactScalar(a), ExactScalar(b), ExactScalar(c)});
}

template <class S>
std::size_t joint_span_dim(const OperatorSystem<S>& a, const OperatorSystem<S>& b,
                           double tol = 1e-9) {
  std::vector<std::vector<S>> rows;
  for (const auto& m : a.basis) rows.push_back(vec(m));
  for (const auto& m : b.basis) rows.push_back(vec(m));
  return rank_of_vectors(rows, tol);
}

}  // namespace

TEST_CASE("tuple validation rejects malformed input") {
  OperatorTuple<ExactScalar> t;
  t.n = 3;
  CHECK_THROWS_AS(validate_tuple(t), EmptyTuple);

  t.mats.push_back(Matrix<ExactScalar>(2, 2));
  CHECK_THROWS_AS(validate_tuple(t), DimensionMismatch);

  t.mats[0] = Matrix<ExactScalar>(3, 3);
  t.mats[0](0, 1) = ExactScalar(1);  // not Hermitian
  CHECK_THROWS_AS(validate_tuple(t), NotHermitian);

  t.mats[0] = Matrix<ExactScalar>::identity(3);
  CHECK_THROWS_AS(validate_tuple(t), NotTraceless);
  CHECK_NOTHROW(validate_tuple(t, {}, /*require_traceless=*/false));
}

TEST_CASE("adjoin_unit puts the unit first and reports the span dimension") {
  const auto fx = fixture_n7_d4();
  AdjoinInfo info;
  const auto sys = adjoin_unit(fx, {}, &info);
  CHECK(sys.n == 7);
  CHECK(sys.dim() == 5);
  CHECK(sys.contains_unit);
  CHECK(frob_dist(sys.basis[0], Matrix<FloatScalar>::identity(7)) == 0.0);
  CHECK(info.span_dim == 5);
  CHECK_FALSE(info.dependent);

  OperatorTuple<ExactScalar> dep;
  dep.n = 3;
  dep.mats.push_back(diag3(1, -1, 0));
  dep.mats.push_back(diag3(2, -2, 0));
  AdjoinInfo dinfo;
  const auto dsys = adjoin_unit(dep, {}, &dinfo);
  CHECK(dsys.dim() == 3);
  CHECK(dinfo.span_dim == 2);
  CHECK(dinfo.dependent);
}

TEST_CASE("reflexive complement: dimension count, orthogonality, involution") {
  OperatorTuple<ExactScalar> t;
  t.n = 3;
  t.mats.push_back(diag3(1, -1, 0));
  const auto sys = adjoin_unit(t);
  const auto comp = reflexive_complement(sys);
  CHECK(comp.n == 3);
  CHECK(sys.dim() + comp.dim() == 3 * 3 + 1);
  CHECK(comp.contains_unit);
  for (const auto& c : comp.basis) {
    const ExactScalar overlap = hs_inner(t.mats[0], c);
    CHECK(overlap.is_zero());
  }
  const auto twice = reflexive_complement(comp);
  CHECK(twice.dim() == sys.dim());
  CHECK(joint_span_dim(twice, sys) == sys.dim());
}

TEST_CASE("complementing the scalars gives everything and vice versa") {
  OperatorSystem<ExactScalar> scalars;
  scalars.n = 3;
  scalars.contains_unit = true;
  scalars.basis.push_back(Matrix<ExactScalar>::identity(3));
  const auto full = reflexive_complement(scalars);
  CHECK(full.dim() == 9);

  const auto back = reflexive_complement(full);
  CHECK(back.dim() == 1);
  CHECK(frob_dist(back.basis[0], Matrix<ExactScalar>::identity(3)) == 0.0);
}

TEST_CASE("reflexive complement on the float backend") {
  const auto sys = adjoin_unit(fixture_n7_d4());
  const auto comp = reflexive_complement(sys);
  CHECK(sys.dim() + comp.dim() == 7 * 7 + 1);
  const auto twice = reflexive_complement(comp);
  CHECK(twice.dim() == sys.dim());
  CHECK(joint_span_dim(twice, sys) == sys.dim());
}

TEST_CASE("conjugate and transpose variants act entrywise") {
  OperatorSystem<ExactScalar> s;
  s.n = 2;
  Matrix<ExactScalar> m(2, 2);
  m(0, 1) = ExactScalar(mpq_class(0), mpq_class(1));  // i in the corner
  m(1, 0) = ExactScalar(mpq_class(2), mpq_class(0));
  s.basis.push_back(m);

  const auto cs = conjugate_system(s);
  CHECK(cs.basis[0](0, 1) == ExactScalar(mpq_class(0), mpq_class(-1)));
  CHECK(cs.basis[0](1, 0) == ExactScalar(mpq_class(2), mpq_class(0)));

  const auto ts = transpose_system(s);
  CHECK(ts.basis[0](1, 0) == ExactScalar(mpq_class(0), mpq_class(1)));
  CHECK(ts.basis[0](0, 1) == ExactScalar(mpq_class(2), mpq_class(0)));

  OperatorTuple<ExactScalar> t;
  t.n = 2;
  t.mats.push_back(m);
  CHECK(conjugate_tuple(t).mats[0](0, 1) == ExactScalar(mpq_class(0), mpq_class(-1)));
}

TEST_CASE("sampling is deterministic and respects the requested shape") {
  CounterRng a(RngSpec{42, 3});
  CounterRng b(RngSpec{42, 3});
  const auto ta = sample_tuple<FloatScalar>(4, 3, a);
  const auto tb = sample_tuple<FloatScalar>(4, 3, b);
  REQUIRE(ta.d() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(frob_dist(ta.mats[k], tb.mats[k]) == 0.0);
  CHECK(frob_dist(ta.mats[0], ta.mats[1]) > 1e-3);
  for (const auto& x : ta.mats) {
    CHECK(is_hermitian(x, 1e-12));
    CHECK(std::abs(x.trace()) < 1e-12);
  }

  CounterRng c(RngSpec{7, 0});
  const auto zd = sample_traceless_hermitian<FloatScalar>(3, c, SampleShape::ZeroDiagonal);
  for (std::size_t i = 0; i < 3; ++i) CHECK(zd(i, i) == FloatScalar(0.0, 0.0));
  CHECK(std::abs(zd(0, 1)) > 0.0);

  const auto dg = sample_traceless_hermitian<FloatScalar>(2, c, SampleShape::Diagonal);
  CHECK(dg(0, 1) == FloatScalar(0.0, 0.0));
  CHECK(dg(1, 0) == FloatScalar(0.0, 0.0));
  CHECK(std::abs(dg(0, 0) + dg(1, 1)) < 1e-14);  // forced multiple of diag(1, -1)
}

TEST_CASE("exact sampling produces exactly Hermitian traceless dyadic matrices") {
  CounterRng rng(RngSpec{11, 5});
  const auto x = sample_traceless_hermitian<ExactScalar>(4, rng);
  CHECK(x == x.adjoint());
  CHECK(x.trace().is_zero());
  bool nonzero = false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) nonzero |= !x(i, j).is_zero();
  CHECK(nonzero);
}

TEST_CASE("block tuple with c = 0.3 reproduces the eigenvalue table") {
  const double s = std::sqrt(1.5);
  const std::array<FloatScalar, 2> a1{FloatScalar(s, 0.0), FloatScalar(0.0, 0.0)};
  const std::array<FloatScalar, 2> a2{FloatScalar(0.0, 0.3 * s),
                                      FloatScalar(s * std::sqrt(0.91), 0.0)};
  const auto t = construct_block_tuple<FloatScalar>(a1, a2);
  REQUIRE(t.n == 3);
  REQUIRE(t.d() == 4);
  CHECK_NOTHROW(validate_tuple(t, {}, /*require_traceless=*/true));

  const auto g = gram(t.mats, TraceMode::Normalized, true);
  CHECK(std::abs(g(0, 0) - FloatScalar(2.0 / 3.0, 0.0)) < 1e-12);
  CHECK(std::abs(g(1, 1) - FloatScalar(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(g(2, 2) - FloatScalar(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(g(3, 3) - FloatScalar(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(g(0, 1)) < 1e-12);
  CHECK(std::abs(g(2, 3)) < 1e-12);

  const Matrix<FloatScalar> ysq = t.mats[2] * t.mats[2] + t.mats[3] * t.mats[3];
  const auto eig = eig_hermitian(ysq);
  REQUIRE(eig.values.size() == 3);
  CHECK(eig.values[0] == doctest::Approx(1.05).epsilon(1e-10));
  CHECK(eig.values[1] == doctest::Approx(1.95).epsilon(1e-10));
  CHECK(eig.values[2] == doctest::Approx(3.0).epsilon(1e-10));

  // The Y pair has identity Gram matrix, so its degree matrix is the bare
  // sum of squares.
  OperatorTuple<FloatScalar> ys;
  ys.n = 3;
  ys.mats = {t.mats[2], t.mats[3]};
  CHECK(frob_dist(degree_matrix(ys), ysq) < 1e-12);

  // Full tuple: the T contribution is the scalar 2, shifting every eigenvalue.
  const auto dfull = eig_hermitian(degree_matrix(t));
  CHECK(dfull.values[0] == doctest::Approx(3.05).epsilon(1e-10));
  CHECK(dfull.values[1] == doctest::Approx(3.95).epsilon(1e-10));
  CHECK(dfull.values[2] == doctest::Approx(5.0).epsilon(1e-10));

  // Rank-one sanity on the same data: |a2><a2| has spectrum (0, 3/2).
  Matrix<FloatScalar> proj(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) proj(i, j) = a2[i] * ScalarOps<FloatScalar>::conj(a2[j]);
  const auto peig = eig_hermitian(proj);
  CHECK(peig.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(peig.values[1] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("block tuple with orthogonal alphas degenerates to a double eigenvalue") {
  const double s = std::sqrt(1.5);
  const std::array<FloatScalar, 2> a1{FloatScalar(s, 0.0), FloatScalar(0.0, 0.0)};
  const std::array<FloatScalar, 2> a2{FloatScalar(0.0, 0.0), FloatScalar(s, 0.0)};
  const auto t = construct_block_tuple<FloatScalar>(a1, a2);
  const Matrix<FloatScalar> ysq = t.mats[2] * t.mats[2] + t.mats[3] * t.mats[3];
  const auto eig = eig_hermitian(ysq);
  CHECK(eig.values[0] == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(eig.values[1] == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(eig.values[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("block tuple rejects alphas violating the trace normalization") {
  const double s = std::sqrt(1.5);
  const std::array<FloatScalar, 2> good{FloatScalar(s, 0.0), FloatScalar(0.0, 0.0)};
  const std::array<FloatScalar, 2> short_vec{FloatScalar(1.0, 0.0), FloatScalar(0.0, 0.0)};
  CHECK_THROWS_AS(construct_block_tuple<FloatScalar>(short_vec, good), NormalizationViolated);
  // Correct norms but a real overlap.
  CHECK_THROWS_AS(construct_block_tuple<FloatScalar>(good, good), NormalizationViolated);
  CHECK_NOTHROW(construct_block_tuple<FloatScalar>(short_vec, good, false));
}

TEST_CASE("exact block tuple with alpha2 = i alpha1") {
  const ExactScalar a0(mpq_class(1, 2), mpq_class(1, 2));  // (1+i)/2
  const ExactScalar a1v(mpq_class(1), mpq_class(0));
  const ExactScalar i_unit(mpq_class(0), mpq_class(1));
  const std::array<ExactScalar, 2> a1{a0, a1v};
  const std::array<ExactScalar, 2> a2{i_unit * a0, i_unit * a1v};
  const auto t = construct_block_tuple<ExactScalar>(a1, a2);
  CHECK(t.mats[2](0, 2) == a0);
  CHECK(t.mats[2](2, 0) == ScalarOps<ExactScalar>::conj(a0));
  CHECK_NOTHROW(validate_tuple(t));

  // |alpha2> = i|alpha1> makes the projector sum rank one: spectrum {0, 3} on
  // the block, 3 in the corner.
  const Matrix<ExactScalar> ysq = t.mats[2] * t.mats[2] + t.mats[3] * t.mats[3];
  Matrix<ExactScalar> block(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) block(i, j) = ysq(i, j);
  const auto br = exact_rank_det(block);
  CHECK(br.rank == 1);
  CHECK(block.trace() == ExactScalar(3));
  CHECK(ysq(2, 2) == ExactScalar(3));
  CHECK(ysq(0, 2).is_zero());

  const std::array<ExactScalar, 2> bad{a1v, a1v};
  CHECK_THROWS_AS(construct_block_tuple<ExactScalar>(bad, a2), NormalizationViolated);
  CHECK_THROWS_AS(construct_block_tuple<ExactScalar>(a1, a1), NormalizationViolated);
}
