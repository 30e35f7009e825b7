#include <doctest.h>

#include "qrigid/matrix.hpp"
#include "qrigid/scalar.hpp"

using namespace qrigid;

TEST_CASE("exact scalar arithmetic is field arithmetic") {
  const ExactScalar a = ExactScalar::ratio(1, 3) + ExactScalar::ratio(1, 6);
  CHECK(a == ExactScalar::ratio(1, 2));

  ExactScalar z(mpq_class(2), mpq_class(-3));  // 2 - 3i
  CHECK(z.conj() == ExactScalar(mpq_class(2), mpq_class(3)));
  CHECK(z.norm_sq() == mpq_class(13));

  const ExactScalar w = z * z.conj();
  CHECK(w == ExactScalar(mpq_class(13), mpq_class(0)));

  ExactScalar q = ExactScalar(1);
  q /= z;
  CHECK(q * z == ExactScalar(1));

  CHECK_THROWS_AS(q /= ExactScalar(), DivisionByZero);
}

TEST_CASE("ratio canonicalizes and rejects zero denominators") {
  CHECK(ExactScalar::ratio(2, 4) == ExactScalar::ratio(1, 2));
  CHECK(ExactScalar::ratio(-3, -6) == ExactScalar::ratio(1, 2));
  CHECK(ExactScalar::ratio(3, -6) == ExactScalar::ratio(-1, 2));
  CHECK_THROWS_AS(ExactScalar::ratio(1, 0), DivisionByZero);
}

TEST_CASE("scalar ops traits round-trip to complex doubles") {
  const ExactScalar z = ExactScalar::ratio(3, 4);
  CHECK(z.to_complex() == FloatScalar(0.75, 0.0));
  CHECK(ScalarOps<ExactScalar>::backend == Backend::Exact);
  CHECK(ScalarOps<FloatScalar>::backend == Backend::Float);
  CHECK(ScalarOps<FloatScalar>::conj(FloatScalar(1, 2)) == FloatScalar(1, -2));
  CHECK(ScalarOps<ExactScalar>::norm_sq(ExactScalar::ratio(1, 2)) == mpq_class(1, 4));
}

TEST_CASE("trace mode scaling: delta form equals n^2 times normalized") {
  // exact identity by construction, bit for bit in both backends
  const ExactScalar t = ExactScalar::ratio(5, 7);
  const std::size_t n = 6;
  const ExactScalar norm = apply_trace_mode(t, n, TraceMode::Normalized);
  const ExactScalar delta = apply_trace_mode(t, n, TraceMode::DeltaForm);
  CHECK(delta == ScalarOps<ExactScalar>::mul_int(norm, static_cast<long>(n * n)));

  const FloatScalar tf(0.1234567890123, -0.9876543210987);
  const FloatScalar normf = apply_trace_mode(tf, n, TraceMode::Normalized);
  const FloatScalar deltaf = apply_trace_mode(tf, n, TraceMode::DeltaForm);
  CHECK(deltaf == ScalarOps<FloatScalar>::mul_int(normf, static_cast<long>(n * n)));
}

TEST_CASE("matrix basics: units, products, adjoints") {
  using M = Matrix<ExactScalar>;
  const auto e01 = M::unit(2, 0, 1);
  const auto e10 = M::unit(2, 1, 0);
  CHECK(e01 * e10 == M::unit(2, 0, 0));
  CHECK(e10 * e01 == M::unit(2, 1, 1));
  CHECK((e01 * e01) == M::zero(2, 2));

  M z(2, 2);
  z(0, 1) = ExactScalar(mpq_class(0), mpq_class(1));
  CHECK(z.adjoint()(1, 0) == ExactScalar(mpq_class(0), mpq_class(-1)));
  CHECK(z.transpose()(1, 0) == z(0, 1));
  CHECK(z.conj()(0, 1) == ExactScalar(mpq_class(0), mpq_class(-1)));

  CHECK(M::identity(3).trace() == ExactScalar(3));
  CHECK_THROWS_AS(Matrix<ExactScalar>(2, 3).trace(), DimensionMismatch);
}

TEST_CASE("vec/unvec is the row-major bijection and kron matches vec(AXB)") {
  using M = Matrix<ExactScalar>;
  M x(2, 2);
  x(0, 0) = 1;
  x(0, 1) = 2;
  x(1, 0) = 3;
  x(1, 1) = 4;
  const auto v = vec(x);
  CHECK(v[0] == ExactScalar(1));
  CHECK(v[1] == ExactScalar(2));
  CHECK(v[2] == ExactScalar(3));
  CHECK(v[3] == ExactScalar(4));
  CHECK(unvec(v, 2) == x);

  // vec(A X B) = (A kron B^T) vec(X) for a random-ish exact instance
  M a(2, 2), b(2, 2);
  a(0, 0) = ExactScalar::ratio(1, 2);
  a(0, 1) = 3;
  a(1, 0) = ExactScalar(mpq_class(0), mpq_class(1));
  a(1, 1) = ExactScalar::ratio(-2, 5);
  b(0, 0) = 7;
  b(0, 1) = ExactScalar::ratio(1, 3);
  b(1, 0) = ExactScalar(mpq_class(1), mpq_class(1));
  b(1, 1) = 0;
  const M axb = a * x * b;
  const M k = kron(a, b.transpose());
  const auto vx = vec(x);
  std::vector<ExactScalar> kv(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) kv[i] += k(i, j) * vx[j];
  CHECK(kv == vec(axb));
}
