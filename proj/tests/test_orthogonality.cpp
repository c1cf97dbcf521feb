/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "semiop/harness.hpp"
#include "semiop/orthogonality.hpp"
#include "semiop/rng.hpp"

using namespace semiop;

namespace {

const ComplexMatrix kE1 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
const ComplexMatrix kE2 = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
const ComplexMatrix kPm = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});

PositiveOperator identity_op(std::size_t n) { return make_positive(ComplexMatrix::identity(n)); }

}  // namespace

TEST_CASE("rho: fixed points") {
  OptimizerConfig cfg;
  const PositiveOperator id = identity_op(2);
  Rng rng(41);
  ComplexMatrix t(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(i, j) = rng.next_complex_gaussian();

  const double sn = seminorm(t, id, Lambda(0.6), cfg).value;
  CHECK(rho(t, ComplexMatrix(2, 2), id, Lambda(0.6), Complex(3.0, -2.0), cfg) ==
        doctest::Approx(sn).epsilon(1e-9));
  CHECK(rho(t, t, id, Lambda(0.6), Complex(0.0, 0.0), cfg) == doctest::Approx(sn).epsilon(1e-9));
  CHECK(rho(kE1, kE2, id, Lambda(1.0), Complex(2.0, 0.0), cfg) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("coupling_form: positive scalings give the scaled objective") {
  Rng rng(42);
  ComplexMatrix t(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = rng.next_complex_gaussian();
  Vector y(3);
  for (auto& z : y) z = rng.next_complex_gaussian();
  y = normalized(y);
  const Lambda lambda(0.35);
  const Complex z = coupling_form(t, t.scaled(2.0), lambda, y);
  CHECK(std::abs(z.imag()) <= 1e-12);
  CHECK(z.real() == doctest::Approx(2.0 * objective(t, lambda, y)).epsilon(1e-10));
}

TEST_CASE("bj_orthogonal: null S makes everything orthogonal") {
  OptimizerConfig cfg;
  const auto v = bj_orthogonal(kE1, ComplexMatrix(2, 2), identity_op(2), Lambda(0.5), cfg);
  CHECK(v.orthogonal);
  CHECK(v.xi_star == Complex(0.0, 0.0));
  CHECK(v.rho_min == doctest::Approx(v.rho_zero));
}

TEST_CASE("bj_orthogonal: S = T cancels at xi = -1") {
  OptimizerConfig cfg;
  Rng rng(43);
  ComplexMatrix t(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(i, j) = rng.next_complex_gaussian();
  const auto v = bj_orthogonal(t, t, identity_op(2), Lambda(0.5), cfg);
  CHECK_FALSE(v.orthogonal);
  CHECK(std::abs(v.xi_star - Complex(-1.0, 0.0)) <= 1e-4);
  CHECK(v.rho_min <= 1e-6 * v.rho_zero);
}

TEST_CASE("bj_orthogonal: classical rank-one pair at lambda = 1") {
  OptimizerConfig cfg;
  const auto v = bj_orthogonal(kE1, kE2, identity_op(2), Lambda(1.0), cfg);
  CHECK(v.orthogonal);
  CHECK(v.rho_zero == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v.m_value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("bj_orthogonal: numerical-radius orthogonality of diag(1,-1) to I") {
  OptimizerConfig cfg;
  const auto v = bj_orthogonal(kPm, ComplexMatrix::identity(2), identity_op(2), Lambda(0.0), cfg);
  CHECK(v.orthogonal);
  CHECK(v.rho_zero == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v.m_value == doctest::Approx(1.0).epsilon(1e-6));  // c(I) = 1
}

TEST_CASE("bj_orthogonal: diag(1,0) is NOT orthogonal to I at lambda = 1") {
  // max(|1+xi|, |xi|) dips to 1/2 at xi = -1/2, so no orthogonality here;
  // the certificate with [I] = 1 applies to diag(1,-1) instead.
  OptimizerConfig cfg;
  const auto v = bj_orthogonal(kE1, ComplexMatrix::identity(2), identity_op(2), Lambda(1.0), cfg);
  CHECK_FALSE(v.orthogonal);
  CHECK(std::abs(v.xi_star - Complex(-0.5, 0.0)) <= 1e-3);
  CHECK(v.rho_min == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("bj_orthogonal: a null T is orthogonal to everything") {
  OptimizerConfig cfg;
  const auto v = bj_orthogonal(ComplexMatrix(2, 2), kE1, identity_op(2), Lambda(0.7), cfg);
  CHECK(v.orthogonal);
  CHECK(v.xi_star == Complex(0.0, 0.0));
}

TEST_CASE("bj_orthogonal: verdict invariants") {
  OptimizerConfig cfg;
  Rng rng(44);
  for (int k = 0; k < 12; ++k) {
    ComplexMatrix t(2, 2), s(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        t(i, j) = rng.next_complex_gaussian();
        s(i, j) = rng.next_complex_gaussian();
      }
    cfg.seed = 500 + k;
    const auto v = bj_orthogonal(t, s, identity_op(2), Lambda(rng.next_unit()), cfg);
    CHECK(v.rho_min <= v.rho_zero + 1e-12);
    CHECK(v.orthogonal == (v.relative_gap <= v.tolerance_used));
  }
}

TEST_CASE("certificate_check: closed-form orthogonal pair and null S") {
  OptimizerConfig cfg;
  const PositiveOperator id = identity_op(2);
  const auto v = bj_orthogonal(kE1, kE2, id, Lambda(1.0), cfg);
  REQUIRE(v.orthogonal);
  const auto cert = certificate_check(kE1, kE2, id, Lambda(1.0), v, 96, cfg);
  CHECK(cert.applicable);
  CHECK(cert.passed);
  CHECK(cert.samples == 96);

  const auto v0 = bj_orthogonal(kE1, ComplexMatrix(2, 2), id, Lambda(1.0), cfg);
  const auto cert0 = certificate_check(kE1, ComplexMatrix(2, 2), id, Lambda(1.0), v0, 96, cfg);
  CHECK(cert0.applicable);
  CHECK(cert0.passed);
}

TEST_CASE("certificate_check: not applicable to non-orthogonal pairs") {
  OptimizerConfig cfg;
  const PositiveOperator id = identity_op(2);
  Rng rng(45);
  ComplexMatrix t(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(i, j) = rng.next_complex_gaussian();
  const auto v = bj_orthogonal(t, t, id, Lambda(0.5), cfg);
  REQUIRE_FALSE(v.orthogonal);
  const auto cert = certificate_check(t, t, id, Lambda(0.5), v, 96, cfg);
  CHECK_FALSE(cert.applicable);
  CHECK_FALSE(cert.passed);
}

TEST_CASE("theta_condition: null S is trivially satisfied") {
  OptimizerConfig cfg;
  const auto rep = theta_condition(kE1, ComplexMatrix(2, 2), identity_op(2), Lambda(0.5), cfg);
  CHECK(rep.satisfied);
  for (double f : rep.form_value) CHECK(std::abs(f) <= rep.eps_sign + 1e-15);
}

TEST_CASE("theta_condition: rank-one pair satisfied, S = T rejected at theta = pi") {
  OptimizerConfig cfg;
  const PositiveOperator id = identity_op(2);
  CHECK(theta_condition(kE1, kE2, id, Lambda(1.0), cfg).satisfied);

  Rng rng(46);
  ComplexMatrix t(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(i, j) = rng.next_complex_gaussian();
  const auto rep = theta_condition(t, t, id, Lambda(0.5), cfg);
  CHECK_FALSE(rep.satisfied);
}

TEST_CASE("theta_condition: per-theta records are complete and pool defects are small") {
  OptimizerConfig cfg;
  const auto rep = theta_condition(kE1, kE2, identity_op(2), Lambda(1.0), cfg, 90);
  CHECK(rep.theta.size() == 90);
  CHECK(rep.form_value.size() == 90);
  CHECK(rep.maximality_defect.size() == 90);
  for (double d : rep.maximality_defect) CHECK(d <= rep.eps_max);
  CHECK(rep.pool.size() >= 1);
}

TEST_CASE("triangle_equality: positive scalings hold with the product witness") {
  OptimizerConfig cfg;
  const PositiveOperator id = identity_op(3);
  Rng rng(47);
  ComplexMatrix t(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = rng.next_complex_gaussian();
  const double sn = seminorm(t, id, Lambda(0.5), cfg).value;

  const auto rep1 = triangle_equality(t, t, id, Lambda(0.5), cfg);
  CHECK(rep1.holds);
  CHECK(std::abs(rep1.witness_value - Complex(sn * sn, 0.0)) <= 1e-6 * std::max(1.0, sn * sn));

  const auto rep2 = triangle_equality(t, t.scaled(2.0), id, Lambda(0.5), cfg);
  CHECK(rep2.holds);
  CHECK(std::abs(rep2.witness_value - Complex(2.0 * sn * sn, 0.0)) <=
        1e-6 * std::max(1.0, 2.0 * sn * sn));
}

TEST_CASE("triangle_equality: orthogonal rank-one pair misses equality") {
  OptimizerConfig cfg;
  const auto rep = triangle_equality(kE1, kE2, identity_op(2), Lambda(1.0), cfg);
  CHECK_FALSE(rep.holds);
  CHECK(rep.sum_seminorm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.seminorm_sum == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.sum_seminorm <= rep.seminorm_sum + 1e-9);
}

TEST_CASE("scaling invariance: the verdict ignores nonzero rescalings of both sides") {
  OptimizerConfig cfg;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = Rng::split(seed, 48);
    const std::size_t n = 2 + rng.next_below(2);
    const PositiveOperator id = identity_op(n);
    ComplexMatrix t(n, n), s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        t(i, j) = rng.next_complex_gaussian();
        s(i, j) = rng.next_complex_gaussian();
      }
    const Lambda lambda(rng.next_unit());
    const Complex alpha = std::polar(0.2 + 3.0 * rng.next_unit(), 2.0 * M_PI * rng.next_unit());
    const Complex beta = std::polar(0.2 + 3.0 * rng.next_unit(), 2.0 * M_PI * rng.next_unit());
    cfg.seed = seed;
    // Half the trials compare on an orthogonalized pair so both verdicts occur.
    if (seed % 2 == 1) {
      const auto v0 = bj_orthogonal(t, s, id, lambda, cfg);
      t = t + s.scaled(v0.xi_star);
    }
    const auto v1 = bj_orthogonal(t, s, id, lambda, cfg);
    const auto v2 = bj_orthogonal(t.scaled(alpha), s.scaled(beta), id, lambda, cfg);
    CHECK(v1.orthogonal == v2.orthogonal);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("orthogonality ops: refuse non-members") {
  OptimizerConfig cfg;
  const PositiveOperator a = make_positive(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
  const ComplexMatrix bad = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(bj_orthogonal(bad, kE1, a, Lambda(0.5), cfg), NotMember);
  CHECK_THROWS_AS(theta_condition(kE1, bad, a, Lambda(0.5), cfg), NotMember);
  CHECK_THROWS_AS(triangle_equality(kE1, bad, a, Lambda(0.5), cfg), NotMember);
}
