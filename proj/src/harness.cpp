/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "semiop/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "semiop/rng.hpp"

namespace semiop {

namespace {

constexpr double kLambdaGrid5[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
constexpr double kLambdaGrid4[4] = {0.0, 0.3, 0.7, 1.0};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// FNV-1a over raw double bits; deterministic on one platform.
class Digest {
 public:
  void add(double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h_ ^= (bits >> (8 * i)) & 0xFF;
      h_ *= 1099511628211ULL;
    }
  }
  void add(const ComplexMatrix& m) {
    for (const auto& z : m.data()) {
      add(z.real());
      add(z.imag());
    }
  }
  std::string hex() const {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

OptimizerConfig suite_config(std::uint64_t seed, std::uint64_t tag, int trial) {
  OptimizerConfig cfg;
  cfg.restarts = 16;
  cfg.theta_grid = 240;
  cfg.seed = Rng::split(seed ^ tag, static_cast<std::uint64_t>(trial)).next_u64();
  return cfg;
}

struct SuiteContext {
  PropertyReport* report;
  std::uint64_t seed;
  std::uint64_t tag;
};

void record_failure(SuiteContext& ctx, int trial, const std::string& digest,
                    const std::string& observed, double tol, const std::string& detail) {
  ctx.report->failures.push_back({trial, ctx.seed, digest, observed, tol, detail});
}

void record_note(SuiteContext& ctx, int trial, const std::string& text) {
  ctx.report->notes.push_back({trial, text});
}

InstanceSpec draw_spec(Rng& rng, std::size_t n_min, std::size_t n_max, std::uint64_t inst_seed) {
  InstanceSpec sp;
  sp.n = n_min + rng.next_below(n_max - n_min + 1);
  // Mostly invertible A, with a steady share of rank-deficient instances.
  sp.rank_a = (rng.next_unit() < 0.75 || sp.n < 2) ? sp.n : 1 + rng.next_below(sp.n - 1);
  sp.seed = inst_seed;
  sp.magnitude = 1.0;
  return sp;
}

// ---------------------------------------------------------------------------
// Individual suites. Each trial is deterministic in (suite seed, trial index)
// and contributes exactly one pass or one failure record.
// ---------------------------------------------------------------------------

void suite_seminorm_axioms(SuiteContext& ctx, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    const InstanceSpec sp = draw_spec(rng, 2, 6, rng.next_u64());
    const PositiveOperator a = gen_psd(sp);
    InstanceSpec sp_t = sp, sp_s = sp;
    sp_t.seed = rng.next_u64();
    sp_s.seed = rng.next_u64();
    const ComplexMatrix t = gen_member(sp_t, a);
    const ComplexMatrix s = gen_member(sp_s, a);
    const Complex alpha = std::polar(0.25 + 3.75 * rng.next_unit(), 2.0 * M_PI * rng.next_unit());
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);

    Digest dg;
    dg.add(a.a);
    dg.add(t);
    dg.add(s);

    const ComplexMatrix bt = reduce(t, a).b;
    const ComplexMatrix bs = reduce(s, a).b;

    bool ok = true;
    for (double lam : kLambdaGrid5) {
      const Lambda lambda(lam);
      const double sn_t = seminorm(t, a, lambda, cfg).value;
      const double sn_scaled = seminorm(t.scaled(alpha), a, lambda, cfg).value;

      const double hom_err = std::abs(sn_scaled - std::abs(alpha) * sn_t);
      if (hom_err > 1e-8 * std::abs(alpha) * sn_t + 1e-12) {
        record_failure(ctx, trial, dg.hex(),
                       "lambda=" + fmt_g(lam) + " scaled=" + fmt_g(sn_scaled) +
                           " expected=" + fmt_g(std::abs(alpha) * sn_t),
                       1e-8, "homogeneity");
        ok = false;
        break;
      }

      // The three sups of the subadditivity check share witnesses, so the
      // summands are never under-resolved relative to the sum.
      const EvalResult sum_res = optimize_reduced(bt + bs, lambda, ExtremalMode::Sup, cfg);
      std::vector<Vector> warm;
      if (!sum_res.witness.empty()) warm.push_back(sum_res.witness);
      for (std::size_t p = 0; p < sum_res.pool.size() && p < 4; ++p)
        warm.push_back(sum_res.pool[p].y);
      const std::span<const Vector> warm_span(warm);
      const double sn_t_w =
          std::max(sn_t, optimize_reduced(bt, lambda, ExtremalMode::Sup, cfg, warm_span).value);
      const double sn_s_w = optimize_reduced(bs, lambda, ExtremalMode::Sup, cfg, warm_span).value;
      if (sum_res.value > sn_t_w + sn_s_w + 1e-7) {
        record_failure(ctx, trial, dg.hex(),
                       "lambda=" + fmt_g(lam) + " sum=" + fmt_g(sum_res.value) + " bound=" +
                           fmt_g(sn_t_w + sn_s_w),
                       1e-7, "triangle");
        ok = false;
        break;
      }
    }
    if (ok) ++ctx.report->passes;
  }
}

void suite_sandwich(SuiteContext& ctx, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    const InstanceSpec sp = draw_spec(rng, 2, 6, rng.next_u64());
    const PositiveOperator a = gen_psd(sp);
    InstanceSpec sp_t = sp;
    sp_t.seed = rng.next_u64();
    const ComplexMatrix t = gen_member(sp_t, a);
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);

    Digest dg;
    dg.add(a.a);
    dg.add(t);

    const ComplexMatrix b = reduce(t, a).b;
    const double w = a_numerical_radius(t, a, cfg).value;
    const double upper = svd_extremes(b).sigma_max;

    bool ok = true;
    for (double lam : kLambdaGrid5) {
      const double sn = seminorm(t, a, Lambda(lam), cfg).value;
      if (!(w - 1e-7 <= sn && sn <= upper + 1e-7)) {
        record_failure(ctx, trial, dg.hex(),
                       "lambda=" + fmt_g(lam) + " w=" + fmt_g(w) + " sn=" + fmt_g(sn) +
                           " norm=" + fmt_g(upper),
                       1e-7, "sandwich");
        ok = false;
        break;
      }
    }
    if (ok) ++ctx.report->passes;
  }
}

void suite_r4_bounds(SuiteContext& ctx, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    const InstanceSpec sp = draw_spec(rng, 2, 6, rng.next_u64());
    const PositiveOperator a = gen_psd(sp);
    InstanceSpec sp_t = sp;
    sp_t.seed = rng.next_u64();
    const ComplexMatrix t = gen_member(sp_t, a);
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);

    Digest dg;
    dg.add(a.a);
    dg.add(t);

    const ComplexMatrix b = reduce(t, a).b;
    const double w = numerical_radius_sweep(b, cfg.theta_grid);
    const double c = crawford_sweep(b, cfg.theta_grid);
    const double norm_a = svd_extremes(b).sigma_max;

    bool ok = true;
    for (double lam : kLambdaGrid5) {
      const double sn2 = std::pow(seminorm(t, a, Lambda(lam), cfg).value, 2);
      const double lower = 2.0 * std::sqrt(lam * (1.0 - lam)) * c * norm_a;
      const double upper =
          (1.0 + lam) * w * w + 2.0 * lam * w * std::sqrt(std::max(0.0, w * w - c * c));
      if (lower > sn2 + 1e-7) {
        record_failure(ctx, trial, dg.hex(),
                       "lambda=" + fmt_g(lam) + " lower=" + fmt_g(lower) + " sn2=" + fmt_g(sn2),
                       1e-7, "r4-lower");
        ok = false;
        break;
      }
      if (sn2 > upper + 1e-7) {
        record_failure(ctx, trial, dg.hex(),
                       "lambda=" + fmt_g(lam) + " sn2=" + fmt_g(sn2) + " upper=" + fmt_g(upper),
                       1e-7, "r4-upper");
        ok = false;
        break;
      }
    }
    if (ok) ++ctx.report->passes;
  }
}

void suite_endpoints(SuiteContext& ctx, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    const InstanceSpec sp = draw_spec(rng, 2, 6, rng.next_u64());
    const PositiveOperator a = gen_psd(sp);
    InstanceSpec sp_t = sp;
    sp_t.seed = rng.next_u64();
    const ComplexMatrix t = gen_member(sp_t, a);
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);

    Digest dg;
    dg.add(a.a);
    dg.add(t);

    const ComplexMatrix b = reduce(t, a).b;
    const double sn0 = seminorm(t, a, Lambda(0.0), cfg).value;
    const double sn1 = seminorm(t, a, Lambda(1.0), cfg).value;
    const double w = numerical_radius_sweep(b, cfg.theta_grid);
    const double smax = svd_extremes(b).sigma_max;

    if (!rel_close(sn0, w, 1e-6)) {
      record_failure(ctx, trial, dg.hex(), "sn0=" + fmt_g(sn0) + " w=" + fmt_g(w), 1e-6,
                     "endpoint-lambda0");
    } else if (!rel_close(sn1, smax, 1e-6)) {
      record_failure(ctx, trial, dg.hex(), "sn1=" + fmt_g(sn1) + " smax=" + fmt_g(smax), 1e-6,
                     "endpoint-lambda1");
    } else {
      ++ctx.report->passes;
    }
  }
}

void suite_oracle_n2(SuiteContext& ctx, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    ComplexMatrix b(2, 2);
    const double scale = 0.5 + 1.5 * rng.next_unit();
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = scale * rng.next_complex_gaussian();
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);

    Digest dg;
    dg.add(b);

    const double delta = 0.002;
    const auto oracle = oracle_scan_all(b, std::span<const double>(kLambdaGrid5, 5), delta);

    bool ok = true;
    for (std::size_t k = 0; k < 5; ++k) {
      const double sn = optimize_reduced(b, Lambda(kLambdaGrid5[k]), ExtremalMode::Sup, cfg).value;
      const double err = std::abs(sn * sn - oracle[k].sup);
      if (err > oracle[k].error_bound + 1e-6) {
        record_failure(ctx, trial, dg.hex(),
                       "lambda=" + fmt_g(kLambdaGrid5[k]) + " engine2=" + fmt_g(sn * sn) +
                           " oracle=" + fmt_g(oracle[k].sup) + " bound=" +
                           fmt_g(oracle[k].error_bound),
                       1e-6, "oracle-sup");
        ok = false;
        break;
      }
    }
    if (ok) ++ctx.report->passes;
  }
}

void suite_t5_equality(SuiteContext& ctx, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    const InstanceSpec sp = draw_spec(rng, 2, 5, rng.next_u64());
    const PositiveOperator a = gen_psd(sp);
    InstanceSpec sp_t = sp;
    sp_t.seed = rng.next_u64();
    const ComplexMatrix t = gen_member(sp_t, a);
    const Lambda lambda(kLambdaGrid5[trial % 5]);
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);

    if (trial % 6 == 0) {
      // Positive scaling: equality must hold and the witness value must land
      // on the product of seminorms.
      const double alpha = 0.25 + 1.75 * rng.next_unit();
      const ComplexMatrix s = t.scaled(alpha);
      Digest dg;
      dg.add(a.a);
      dg.add(t);
      dg.add(alpha);
      const EqualityReport rep = triangle_equality(t, s, a, lambda, cfg);
      if (!rep.holds) {
        record_failure(ctx, trial, dg.hex(),
                       "L=" + fmt_g(rep.sum_seminorm) + " R=" + fmt_g(rep.seminorm_sum),
                       rep.tol_eq, "t5-scaling-holds");
      } else if (std::abs(rep.witness_value - Complex(rep.target, 0.0)) >
                 1e-6 * std::max(1.0, rep.target)) {
        record_failure(ctx, trial, dg.hex(),
                       "witness=(" + fmt_g(rep.witness_value.real()) + "," +
                           fmt_g(rep.witness_value.imag()) + ") target=" + fmt_g(rep.target),
                       1e-6, "t5-witness-value");
      } else {
        ++ctx.report->passes;
      }
    } else {
      InstanceSpec sp_s = sp;
      sp_s.seed = rng.next_u64();
      const ComplexMatrix s = gen_member(sp_s, a);
      Digest dg;
      dg.add(a.a);
      dg.add(t);
      dg.add(s);
      const EqualityReport rep = triangle_equality(t, s, a, lambda, cfg);
      if (rep.seminorm_sum - rep.sum_seminorm > 1e-3 && rep.holds) {
        record_failure(ctx, trial, dg.hex(),
                       "L=" + fmt_g(rep.sum_seminorm) + " R=" + fmt_g(rep.seminorm_sum),
                       rep.tol_eq, "t5-strict-gap-holds");
      } else {
        ++ctx.report->passes;
      }
    }
  }
}

void suite_corollaries(SuiteContext& ctx, int trials) {
  const PositiveOperator id2 = make_positive(ComplexMatrix::identity(2));
  const ComplexMatrix t_pm =
      ComplexMatrix::from_rows({{Complex(1.0, 0.0), Complex(0.0, 0.0)},
                                {Complex(0.0, 0.0), Complex(-1.0, 0.0)}});
  const ComplexMatrix s_id = ComplexMatrix::identity(2);

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(ctx.seed ^ ctx.tag, static_cast<std::uint64_t>(trial));
    const OptimizerConfig cfg = suite_config(ctx.seed, ctx.tag, trial);
    bool ok = true;
    Digest dg;
    dg.add(t_pm);

    // Classical-norm and numerical-radius lower-bound instances on the
    // closed-form pair diag(1,-1) vs I, where the minimum modulus and the
    // Crawford number of I are both 1.
    for (double lam : {1.0, 0.0}) {
      for (int k = 0; k < 24 && ok; ++k) {
        const Complex xi = std::polar(4.0 * std::sqrt(rng.next_unit()), 2.0 * M_PI * rng.next_unit());
        const double r = rho(t_pm, s_id, id2, Lambda(lam), xi, cfg);
        if (r * r < 1.0 + std::norm(xi) - 1e-6) {
          record_failure(ctx, trial, dg.hex(),
                         "lambda=" + fmt_g(lam) + " xi=(" + fmt_g(xi.real()) + "," +
                             fmt_g(xi.imag()) + ") rho2=" + fmt_g(r * r),
                         1e-6, lam == 1.0 ? "corollary-norm-bound" : "corollary-w-bound");
          ok = false;
        }
      }
      if (!ok) break;
    }

    // Equality characterizations at A = I for both endpoint seminorms.
    if (ok) {
      for (double lam : {1.0, 0.0}) {
        InstanceSpec sp;
        sp.n = 2 + rng.next_below(2);
        sp.rank_a = sp.n;
        sp.seed = rng.next_u64();
        const PositiveOperator idn = make_positive(ComplexMatrix::identity(sp.n));
        const ComplexMatrix t = gen_member(sp, idn);
        const double alpha = 0.25 + 1.75 * rng.next_unit();
        const EqualityReport rep = triangle_equality(t, t.scaled(alpha), idn, Lambda(lam), cfg);
        if (!rep.holds ||
            std::abs(rep.witness_value - Complex(rep.target, 0.0)) > 1e-6 * std::max(1.0, rep.target)) {
          Digest dg2;
          dg2.add(t);
          dg2.add(alpha);
          record_failure(ctx, trial, dg2.hex(),
                         "lambda=" + fmt_g(lam) + " holds=" + (rep.holds ? "1" : "0") +
                             " witness=(" + fmt_g(rep.witness_value.real()) + "," +
                             fmt_g(rep.witness_value.imag()) + ") target=" + fmt_g(rep.target),
                         1e-6, "corollary-equality");
          ok = false;
          break;
        }
      }
    }
    if (ok) ++ctx.report->passes;
  }
}

}  // namespace

PositiveOperator gen_psd(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.rank_a < 1 || spec.rank_a > spec.n)
    throw std::invalid_argument("gen_psd: need 1 <= rank_a <= n");
  Rng rng = Rng::split(spec.seed, 0x9D5D);
  ComplexMatrix g(spec.n, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.n; ++j) g(i, j) = spec.magnitude * rng.next_complex_gaussian();

  ComplexMatrix a0 = g.adjoint() * g;
  const double shift = 0.1 * spec.magnitude * spec.magnitude;
  for (std::size_t i = 0; i < spec.n; ++i) a0(i, i) += shift;

  const HermitianEigen eig = hermitian_eigen(a0);
  // Keep the top rank_a eigenvalues; the shift keeps them clear of the cut.
  ComplexMatrix a(spec.n, spec.n);
  for (std::size_t k = spec.n - spec.rank_a; k < spec.n; ++k) {
    const double ev = eig.eigenvalues[k];
    for (std::size_t i = 0; i < spec.n; ++i)
      for (std::size_t j = 0; j < spec.n; ++j)
        a(i, j) += ev * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
  }
  return make_positive((a + a.adjoint()).scaled(0.5));
}

ComplexMatrix member_correction(const ComplexMatrix& t, const PositiveOperator& a) {
  if (!t.is_square() || t.dim() != a.dim())
    throw DimensionMismatch("member_correction: dimension mismatch");
  const ComplexMatrix p = a.range_basis * a.range_basis.adjoint();
  const ComplexMatrix w = a.kernel_basis * a.kernel_basis.adjoint();
  return p * t * p + w * t;
}

ComplexMatrix gen_member(const InstanceSpec& spec, const PositiveOperator& a) {
  Rng rng = Rng::split(spec.seed, 0x3E3B);
  ComplexMatrix g(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) g(i, j) = spec.magnitude * rng.next_complex_gaussian();
  return member_correction(g, a);
}

T7Stats run_t7_suite(int trials, std::uint64_t seed, PropertyReport* report) {
  T7Stats stats;
  const std::uint64_t tag = fnv1a("t7-equivalence");
  SuiteContext ctx{report, seed, tag};
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::split(seed ^ tag, static_cast<std::uint64_t>(trial));
    const InstanceSpec sp = draw_spec(rng, 2, 4, rng.next_u64());
    const PositiveOperator a = gen_psd(sp);
    InstanceSpec sp_t = sp, sp_s = sp;
    sp_t.seed = rng.next_u64();
    sp_s.seed = rng.next_u64();
    ComplexMatrix t = gen_member(sp_t, a);
    const ComplexMatrix s = gen_member(sp_s, a);
    const Lambda lambda(kLambdaGrid4[trial % 4]);
    const OptimizerConfig cfg = suite_config(seed, tag, trial);

    // Odd trials shift T to the rho minimizer, which makes the pair
    // orthogonal by construction and exercises the certificate branch. The
    // shift is iterated until the residual gap is numerically zero, so the
    // constructed pairs are exactly orthogonal rather than borderline. When
    // S can cancel T outright (rho_min near zero, e.g. rank-one reductions)
    // the shift would leave only roundoff noise, so the raw pair stays.
    if (trial % 2 == 1) {
      for (int round = 0; round < 3; ++round) {
        const OrthogonalityVerdict v0 = bj_orthogonal(t, s, a, lambda, cfg);
        if (round > 0 && v0.relative_gap <= 1e-8) break;
        if (std::abs(v0.xi_star) == 0.0 || v0.rho_min <= 1e-6 * v0.rho_zero) break;
        t = t + s.scaled(v0.xi_star);
      }
    }

    Digest dg;
    dg.add(a.a);
    dg.add(t);
    dg.add(s);
    dg.add(lambda.value);

    const OrthogonalityVerdict verdict = bj_orthogonal(t, s, a, lambda, cfg);
    ++stats.pairs;
    bool ok = true;

    if (verdict.orthogonal) {
      ++stats.orthogonal_true;
      ++stats.cert_checked;
      const CertificateReport cert = certificate_check(t, s, a, lambda, verdict, 96, cfg);
      if (!cert.passed) {
        ++stats.cert_failures;
        record_failure(ctx, trial, dg.hex(),
                       "worst_margin=" + fmt_g(cert.worst_margin) + " rho0=" +
                           fmt_g(verdict.rho_zero) + " m=" + fmt_g(verdict.m_value),
                       1e-6, "t7-certificate");
        ok = false;
      }
    }

    if (ok && sp.n <= 3) {
      const ThetaConditionReport th = theta_condition(t, s, a, lambda, cfg);
      ++stats.theta_compared;
      if (th.satisfied == verdict.orthogonal) {
        ++stats.theta_agreements;
      } else {
        const double min_form =
            th.form_value.empty() ? 0.0
                                  : *std::min_element(th.form_value.begin(), th.form_value.end());
        // Declared bands. The verdict is decided with a relative-gap
        // tolerance while the theta condition tests exact orthogonality, so
        // a pair whose measured gap falls strictly inside (1e-8, tolerance]
        // is orthogonal only up to tolerance and the tests may legitimately
        // split; outside that band the losing test must sit within 10x of
        // its own threshold.
        const bool tolerated =
            verdict.orthogonal
                ? (min_form >= -10.0 * th.eps_sign || verdict.relative_gap > 1e-8)
                : (verdict.relative_gap <= 10.0 * verdict.tolerance_used);
        if (tolerated) {
          ++stats.theta_tolerated;
          record_note(ctx, trial,
                      "theta-disagreement tolerated: orthogonal=" +
                          std::string(verdict.orthogonal ? "1" : "0") + " gap=" +
                          fmt_g(verdict.relative_gap) + " min_form=" + fmt_g(min_form) +
                          " eps_sign=" + fmt_g(th.eps_sign) + " pool=" +
                          std::to_string(th.pool.size()));
        } else {
          ++stats.theta_hard;
          record_failure(ctx, trial, dg.hex(),
                         "orthogonal=" + std::string(verdict.orthogonal ? "1" : "0") + " gap=" +
                             fmt_g(verdict.relative_gap) + " min_form=" + fmt_g(min_form) +
                             " eps_sign=" + fmt_g(th.eps_sign),
                         1e-6, "t7-theta-disagreement");
          ok = false;
        }
      }
    }
    if (ok) ++report->passes;
  }
  return stats;
}

PropertyReport run_suite(const std::string& name, int trials, std::uint64_t seed) {
  if (trials < 0) throw std::invalid_argument("run_suite: negative trial count");
  PropertyReport report;
  report.suite = name;
  report.trials = trials;

  const auto t0 = std::chrono::steady_clock::now();
  SuiteContext ctx{&report, seed, fnv1a(name)};
  if (name == "seminorm-axioms") {
    suite_seminorm_axioms(ctx, trials);
  } else if (name == "sandwich") {
    suite_sandwich(ctx, trials);
  } else if (name == "r4-bounds") {
    suite_r4_bounds(ctx, trials);
  } else if (name == "endpoints") {
    suite_endpoints(ctx, trials);
  } else if (name == "oracle-n2") {
    suite_oracle_n2(ctx, trials);
  } else if (name == "t5-equality") {
    suite_t5_equality(ctx, trials);
  } else if (name == "t7-equivalence") {
    run_t7_suite(trials, seed, &report);
  } else if (name == "corollaries") {
    suite_corollaries(ctx, trials);
  } else {
    throw UnknownSuite("run_suite: unknown suite '" + name + "'");
  }
  report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string report_to_text(const PropertyReport& report, bool include_elapsed) {
  std::string out = "suite=" + report.suite + " trials=" + std::to_string(report.trials) +
                    " passes=" + std::to_string(report.passes) +
                    " failures=" + std::to_string(report.failures.size()) + "\n";
  for (const FailureRecord& f : report.failures) {
    out += "FAIL trial=" + std::to_string(f.trial) + " seed=" + std::to_string(f.seed) +
           " digest=" + f.digest + " observed=\"" + f.observed + "\" tolerance=" +
           fmt_g(f.tolerance) + " detail=" + f.detail + "\n";
  }
  for (const NoteRecord& n : report.notes)
    out += "NOTE trial=" + std::to_string(n.trial) + " " + n.text + "\n";
  if (include_elapsed) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "elapsed=%.6f\n", report.elapsed);
    out += buf;
  }
  return out;
}

}  // namespace semiop
