/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "semiop/engine.hpp"
#include "semiop/rng.hpp"
#include "semiop/semispace.hpp"

using namespace semiop;

namespace {

ComplexMatrix random_matrix(Rng& rng, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (auto& z : v) z = rng.next_complex_gaussian();
  return v;
}

PositiveOperator random_invertible(Rng& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n);
  ComplexMatrix a = g.adjoint() * g;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.2;
  return make_positive(a);
}

}  // namespace

TEST_CASE("make_positive: identity") {
  const PositiveOperator a = make_positive(ComplexMatrix::identity(3));
  CHECK(a.rank == 3);
  CHECK((a.sqrt - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-12);
  CHECK((a.sqrt_pinv - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-12);
}

TEST_CASE("make_positive: diagonal PSD with a kernel") {
  const PositiveOperator a = make_positive(ComplexMatrix::from_rows({{4.0, 0.0}, {0.0, 0.0}}));
  CHECK(a.rank == 1);
  CHECK(std::abs(a.sqrt(0, 0) - Complex(2.0, 0.0)) <= 1e-12);
  CHECK(std::abs(a.sqrt(1, 1)) <= 1e-12);
  CHECK(std::abs(a.sqrt_pinv(0, 0) - Complex(0.5, 0.0)) <= 1e-12);
  CHECK(std::abs(a.sqrt_pinv(1, 1)) <= 1e-12);
}

TEST_CASE("make_positive: rejects indefinite and non-Hermitian input") {
  CHECK_THROWS_AS(make_positive(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -0.5}})), NotPositive);
  CHECK_THROWS_AS(make_positive(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), NotHermitian);
}

TEST_CASE("make_positive: cache invariants on random PSD matrices") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = Rng::split(seed, 21);
    const std::size_t n = 2 + rng.next_below(5);
    ComplexMatrix g = random_matrix(rng, n);
    // Half the instances get a forced kernel by zeroing columns of G.
    if (seed % 2 == 0)
      for (std::size_t i = 0; i < n; ++i) g(i, 0) = 0.0;
    const PositiveOperator a = make_positive(g.adjoint() * g);

    const double scale = std::max(1.0, a.a.frobenius_norm());
    CHECK((a.sqrt * a.sqrt - a.a).frobenius_norm() <= 1e-9 * scale);

    // sqrt_pinv * sqrt acts as the identity on range columns.
    const ComplexMatrix proj = a.sqrt_pinv * a.sqrt;
    for (std::size_t c = 0; c < a.range_basis.cols(); ++c) {
      Vector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = a.range_basis(i, c);
      Vector pv = proj.apply(v);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) err += std::norm(pv[i] - v[i]);
      CHECK(std::sqrt(err) <= 1e-9);
    }

    if (a.kernel_basis.cols() > 0)
      CHECK((a.range_basis.adjoint() * a.kernel_basis).frobenius_norm() <= 1e-10);

    for (double ev : a.eigen.eigenvalues) CHECK(ev >= 0.0);
  }
}

TEST_CASE("a_inner: identity weight reduces to the standard inner product") {
  const PositiveOperator id = make_positive(ComplexMatrix::identity(3));
  Rng rng(5);
  const Vector x = random_vector(rng, 3), y = random_vector(rng, 3);
  CHECK(std::abs(a_inner(x, y, id) - dot(x, y)) <= 1e-14);
}

TEST_CASE("a_inner: kernel vectors are null, conjugate symmetry holds") {
  const PositiveOperator a = make_positive(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
  const Vector e2 = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
  CHECK(std::abs(a_inner(e2, e2, a)) <= 1e-14);

  Rng rng(6);
  for (int k = 0; k < 25; ++k) {
    const Vector x = random_vector(rng, 2), y = random_vector(rng, 2);
    CHECK(std::abs(a_inner(x, y, a) - std::conj(a_inner(y, x, a))) <= 1e-12);
  }
}

TEST_CASE("a_inner: Cauchy-Schwarz in the A-seminorm") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = Rng::split(seed, 22);
    const std::size_t n = 2 + rng.next_below(4);
    ComplexMatrix g = random_matrix(rng, n);
    if (seed % 3 == 0)
      for (std::size_t i = 0; i < n; ++i) g(i, 0) = 0.0;
    const PositiveOperator a = make_positive(g.adjoint() * g);
    const Vector x = random_vector(rng, n), y = random_vector(rng, n);
    CHECK(std::abs(a_inner(x, y, a)) <= a_norm(x, a) * a_norm(y, a) + 1e-10);
    CHECK(a_inner(x, x, a).real() >= -1e-12);
  }
}

TEST_CASE("is_member: invertible A accepts everything") {
  Rng rng(7);
  const PositiveOperator a = random_invertible(rng, 4);
  for (int k = 0; k < 10; ++k) CHECK(is_member(random_matrix(rng, 4), a));
}

TEST_CASE("is_member: kernel-inclusion criterion on diag(1,0)") {
  const PositiveOperator a = make_positive(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
  CHECK_FALSE(is_member(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), a));
  CHECK(is_member(ComplexMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}}), a));
}

TEST_CASE("is_member: invariant under nonzero scaling") {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 2 + rng.next_below(3);
    ComplexMatrix g = random_matrix(rng, n);
    for (std::size_t i = 0; i < n; ++i) g(i, 0) = 0.0;
    const PositiveOperator a = make_positive(g.adjoint() * g);
    const ComplexMatrix t = random_matrix(rng, n);
    const Complex alpha = std::polar(0.001 + 100.0 * rng.next_unit(), 2.0 * M_PI * rng.next_unit());
    CHECK(is_member(t, a) == is_member(t.scaled(alpha), a));
  }
}

TEST_CASE("reduce: identity weight is the identity reduction") {
  const PositiveOperator id = make_positive(ComplexMatrix::identity(3));
  Rng rng(9);
  const ComplexMatrix t = random_matrix(rng, 3);
  CHECK((reduce(t, id).b - t).frobenius_norm() <= 1e-12 * std::max(1.0, t.frobenius_norm()));
}

TEST_CASE("reduce: closed-form compressions") {
  const PositiveOperator a = make_positive(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
  const ComplexMatrix b = reduce(ComplexMatrix::from_rows({{2.0, 0.0}, {0.0, 5.0}}), a).b;
  REQUIRE(b.dim() == 1);
  CHECK(std::abs(b(0, 0) - Complex(2.0, 0.0)) <= 1e-12);

  const PositiveOperator a41 = make_positive(ComplexMatrix::from_rows({{4.0, 0.0}, {0.0, 1.0}}));
  const ComplexMatrix b2 = reduce(ComplexMatrix::identity(2), a41).b;
  CHECK((b2 - ComplexMatrix::identity(2)).frobenius_norm() <= 1e-12);
}

TEST_CASE("reduce: refuses non-members") {
  const PositiveOperator a = make_positive(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
  CHECK_THROWS_AS(reduce(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), a), NotMember);
}

TEST_CASE("reduce: direct samples of the defining sup never beat the reduced value") {
  OptimizerConfig cfg;
  cfg.restarts = 12;
  cfg.theta_grid = 120;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::split(seed, 23);
    const std::size_t n = 2 + rng.next_below(3);
    const PositiveOperator a = random_invertible(rng, n);
    const ComplexMatrix t = random_matrix(rng, n);
    const double lam = rng.next_unit();
    cfg.seed = seed;
    const double sup = seminorm(t, a, Lambda(lam), cfg).value;

    for (int k = 0; k < 1000; ++k) {
      Vector x = random_vector(rng, n);
      const double nx = a_norm(x, a);
      if (nx < 1e-8) continue;
      for (auto& z : x) z /= nx;
      const Vector tx = t.apply(x);
      const double direct = std::sqrt(lam * std::pow(a_norm(tx, a), 2) +
                                      (1.0 - lam) * std::norm(a_inner(tx, x, a)));
      CHECK(direct <= sup + 1e-8);
    }
  }
}

TEST_CASE("lift: produces A-unit vectors mapping back to the reduced point") {
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + rng.next_below(4);
    ComplexMatrix g = random_matrix(rng, n);
    if (k % 2 == 0)
      for (std::size_t i = 0; i < n; ++i) g(i, 0) = 0.0;
    const PositiveOperator a = make_positive(g.adjoint() * g);
    if (a.rank == 0) continue;
    Vector y = random_vector(rng, a.rank);
    y = normalized(y);
    const Vector x = lift(y, a);
    CHECK(a_norm(x, a) == doctest::Approx(1.0).epsilon(1e-9));
    const Vector back = reduce_vector(x, a);
    double err = 0.0;
    for (std::size_t i = 0; i < a.rank; ++i) err += std::norm(back[i] - y[i]);
    CHECK(std::sqrt(err) <= 1e-9);
  }
}

TEST_CASE("degenerate A = 0: rank zero, everything is a member, quantities vanish") {
  const PositiveOperator zero = make_positive(ComplexMatrix(2, 2));
  CHECK(zero.rank == 0);
  Rng rng(11);
  const ComplexMatrix t = random_matrix(rng, 2);
  CHECK(is_member(t, zero));
  OptimizerConfig cfg;
  CHECK(seminorm(t, zero, Lambda(0.5), cfg).value == 0.0);
  CHECK(m_lambda(t, zero, Lambda(0.5), cfg).value == 0.0);
}
