/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "semiop/orthogonality.hpp"

#include <algorithm>
#include <cmath>

namespace semiop {

Complex coupling_form(const ComplexMatrix& bt, const ComplexMatrix& bs, Lambda lambda,
                      const Vector& y) {
  const Vector ty = bt.apply(y);
  const Vector sy = bs.apply(y);
  return lambda.value * dot(sy, ty) + (1.0 - lambda.value) * dot(y, ty) * dot(sy, y);
}

namespace {

constexpr double kGapFloor = 1e-30;

/// Evaluates rho(xi) = sup-objective of bt + xi*bs with a shared witness
/// pool: every evaluation reseeds the next ones, which keeps the heuristic
/// sups consistent across xi.
class RhoEvaluator {
 public:
  RhoEvaluator(ComplexMatrix bt, ComplexMatrix bs, Lambda lambda, const OptimizerConfig& cfg)
      : bt_(std::move(bt)), bs_(std::move(bs)), lambda_(lambda), full_(cfg), light_(cfg) {
    light_.restarts = std::min(cfg.restarts, 8);
    light_.theta_grid = std::min(cfg.theta_grid, 48);
  }

  EvalResult eval(Complex xi, bool full) {
    const ComplexMatrix b = bt_ + bs_.scaled(xi);
    EvalResult r = optimize_reduced(b, lambda_, ExtremalMode::Sup, full ? full_ : light_,
                                    std::span<const Vector>(pool_));
    remember(r);
    return r;
  }

  const ComplexMatrix& bt() const { return bt_; }
  const ComplexMatrix& bs() const { return bs_; }

 private:
  void remember(const EvalResult& r) {
    auto push = [this](const Vector& y) {
      for (const auto& p : pool_)
        if (std::abs(dot(y, p)) >= 1.0 - 1e-6) return;
      pool_.push_back(y);
    };
    if (!r.witness.empty()) push(r.witness);
    for (std::size_t i = 0; i < r.pool.size() && i < 2; ++i) push(r.pool[i].y);
    if (pool_.size() > 8) pool_.erase(pool_.begin(), pool_.begin() + (pool_.size() - 8));
  }

  ComplexMatrix bt_, bs_;
  Lambda lambda_;
  OptimizerConfig full_, light_;
  std::vector<Vector> pool_;
};

struct ReducedPair {
  ComplexMatrix bt, bs;
};

/// Min-norm point of the convex hull of 2-D vectors (MDM/Frank-Wolfe
/// iteration). Feeding it the coupling gradients of all near-active
/// maximizers yields the steepest-descent direction of the max-type convex
/// function rho^2, which stays informative where single gradients cancel.
Complex min_norm_in_hull(const std::vector<Complex>& pts) {
  if (pts.empty()) return Complex(0.0, 0.0);
  Complex x = pts[0];
  for (const Complex& p : pts)
    if (std::abs(p) < std::abs(x)) x = p;
  for (int it = 0; it < 60; ++it) {
    const Complex* support = &pts[0];
    double best = 1e300;
    for (const Complex& p : pts) {
      const double proj = x.real() * p.real() + x.imag() * p.imag();
      if (proj < best) {
        best = proj;
        support = &p;
      }
    }
    const Complex diff = *support - x;
    const double denom = std::norm(diff);
    if (denom <= 1e-300) break;
    const double num = -(x.real() * diff.real() + x.imag() * diff.imag());
    if (num <= 1e-14 * std::norm(x)) break;
    const double t = std::min(1.0, num / denom);
    x += t * diff;
  }
  return x;
}

/// Coupling gradients (2 conj(z)) of the pool members whose objective sits
/// within act_tol of the best one.
std::vector<Complex> active_subgradients(const ComplexMatrix& b_at_xi, const ComplexMatrix& bs,
                                         Lambda lambda, const EvalResult& res, double act_tol) {
  std::vector<Complex> gs;
  const double best_obj = res.value * res.value;
  for (const PoolEntry& e : res.pool) {
    if (best_obj - e.objective > act_tol) continue;
    gs.push_back(2.0 * std::conj(coupling_form(b_at_xi, bs, lambda, e.y)));
    if (gs.size() >= 8) break;
  }
  if (gs.empty() && !res.witness.empty())
    gs.push_back(2.0 * std::conj(coupling_form(b_at_xi, bs, lambda, res.witness)));
  return gs;
}

ReducedPair reduce_pair(const ComplexMatrix& t, const ComplexMatrix& s,
                        const PositiveOperator& a) {
  return {reduce(t, a).b, reduce(s, a).b};
}

/// Newton polish of the coupling-form root: at the exact minimizer of rho
/// with a unique smooth maximizer, coupling_form(bt + xi*bs, bs, y*(xi)) = 0.
Complex polish_root(RhoEvaluator& ev, Lambda lambda, Complex xi0, double form_scale) {
  auto form_at = [&](Complex xi) -> Complex {
    const EvalResult r = ev.eval(xi, false);
    if (r.witness.empty()) return Complex(0.0, 0.0);
    return coupling_form(ev.bt() + ev.bs().scaled(xi), ev.bs(), lambda, r.witness);
  };
  Complex xi = xi0;
  Complex z = form_at(xi);
  const double target = 1e-12 * std::max(form_scale, 1e-30);
  for (int it = 0; it < 8 && std::abs(z) > target; ++it) {
    const double h = 1e-5 * std::max(1.0, std::abs(xi));
    const Complex zpx = form_at(xi + h), zmx = form_at(xi - h);
    const Complex zpy = form_at(xi + Complex(0.0, h)), zmy = form_at(xi - Complex(0.0, h));
    // 2x2 real Jacobian of (Re z, Im z) in (Re xi, Im xi).
    const double j11 = (zpx.real() - zmx.real()) / (2.0 * h);
    const double j12 = (zpy.real() - zmy.real()) / (2.0 * h);
    const double j21 = (zpx.imag() - zmx.imag()) / (2.0 * h);
    const double j22 = (zpy.imag() - zmy.imag()) / (2.0 * h);
    const double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-300) break;
    const double dx = (-z.real() * j22 + z.imag() * j12) / det;
    const double dy = (z.real() * j21 - z.imag() * j11) / det;
    const Complex xin = xi + Complex(dx, dy);
    const Complex zn = form_at(xin);
    if (std::abs(zn) >= std::abs(z)) break;
    xi = xin;
    z = zn;
  }
  return xi;
}

}  // namespace

double rho(const ComplexMatrix& t, const ComplexMatrix& s, const PositiveOperator& a,
           Lambda lambda, Complex xi, const OptimizerConfig& cfg) {
  const ReducedPair rp = reduce_pair(t, s, a);
  return optimize_reduced(rp.bt + rp.bs.scaled(xi), lambda, ExtremalMode::Sup, cfg).value;
}

OrthogonalityVerdict bj_orthogonal(const ComplexMatrix& t, const ComplexMatrix& s,
                                   const PositiveOperator& a, Lambda lambda,
                                   const OptimizerConfig& cfg, double tolerance) {
  const ReducedPair rp = reduce_pair(t, s, a);
  OrthogonalityVerdict v;
  v.tolerance_used = tolerance;

  RhoEvaluator ev(rp.bt, rp.bs, lambda, cfg);
  const double rho0 = ev.eval(Complex(0.0, 0.0), true).value;
  v.rho_zero = rho0;
  v.m_value = optimize_reduced(rp.bs, lambda, ExtremalMode::Inf, cfg).value;
  const double sn_s = optimize_reduced(rp.bs, lambda, ExtremalMode::Sup, cfg).value;

  // A null T is orthogonal to everything; a null S makes rho constant.
  if (rho0 <= 1e-14 * std::max(1.0, rp.bt.frobenius_norm()) ||
      sn_s <= 1e-14 * std::max(1.0, rp.bs.frobenius_norm())) {
    v.orthogonal = true;
    v.rho_min = rho0;
    return v;
  }

  const double scale = std::min(rho0 / std::max(v.m_value, 1e-12), 1e6);
  // Beyond 2*rho0/sn_s the triangle inequality already gives rho >= rho0.
  const double rmax = std::min(4.0 * scale, 10.0 * rho0 / sn_s);
  const double rmin = std::max(1e-9, 1e-3 * std::min(scale, rmax));

  Complex best_xi(0.0, 0.0);
  double best_val = rho0;
  EvalResult best_res = ev.eval(Complex(0.0, 0.0), false);
  const int n_radii = 12, n_angles = 16;
  for (int i = 0; i < n_radii; ++i) {
    const double r =
        rmin * std::pow(rmax / rmin, static_cast<double>(i) / (n_radii - 1));
    for (int k = 0; k < n_angles; ++k) {
      const Complex xi = std::polar(r, 2.0 * M_PI * k / n_angles);
      const EvalResult res = ev.eval(xi, false);
      if (res.value < best_val) {
        best_val = res.value;
        best_xi = xi;
        best_res = res;
      }
    }
  }

  // Bundle-style descent on the convex function rho: at the incumbent,
  // collect the coupling gradients of all near-active inner maximizers, take
  // the min-norm point of their hull as the (sub)gradient, and line-minimize
  // along its negative. Opposing canyon-wall gradients cancel in the hull,
  // so the direction tracks the valley floor where plain compass or single
  // gradient steps stall.
  int evals = 0;
  double h = rmax / 64.0;
  for (int round = 0; round < 64 && evals < 650; ++round) {
    const ComplexMatrix b_at = ev.bt() + ev.bs().scaled(best_xi);
    // Pieces that can take the lead within one step of size h count as
    // active; the tolerance shrinks with h so the endgame resolves the kink
    // apex instead of stalling once the opposing gradients first appear.
    const double act_tol =
        std::min(1e-5 * best_val * best_val, 8.0 * h * best_val * sn_s) + 1e-12;
    const Complex gstar =
        min_norm_in_hull(active_subgradients(b_at, ev.bs(), lambda, best_res, act_tol));
    if (std::abs(gstar) <= 1e-9 * std::max(1.0, rho0 * sn_s)) break;
    const Complex dir = -gstar / std::abs(gstar);

    // Find an improving step, shrinking if the first try overshoots.
    double t = h;
    EvalResult r_mid = ev.eval(best_xi + t * dir, false);
    ++evals;
    bool found = r_mid.value < best_val;
    for (int k = 0; !found && k < 8 && evals < 650; ++k) {
      t *= 0.25;
      r_mid = ev.eval(best_xi + t * dir, false);
      ++evals;
      found = r_mid.value < best_val;
    }
    if (!found) {
      h *= 0.25;
      if (h < 1e-11 * std::max(1.0, std::abs(best_xi))) break;
      continue;
    }
    // Expand the bracket while the section keeps dropping, then golden-section.
    const Complex base = best_xi;
    double t_lo = 0.0, t_mid = t, t_hi = 2.0 * t;
    double f_mid = r_mid.value;
    EvalResult r_best = r_mid;
    double t_best = t_mid;
    while (t_hi <= 2.0 * rmax && evals < 650) {
      const EvalResult r2 = ev.eval(base + t_hi * dir, false);
      ++evals;
      if (r2.value >= f_mid) break;
      t_lo = t_mid;
      t_mid = t_hi;
      f_mid = r2.value;
      r_best = r2;
      t_best = t_mid;
      t_hi *= 2.0;
    }
    const double gr = 0.6180339887498949;
    double a = t_lo, bnd = t_hi;
    double x1 = bnd - gr * (bnd - a), x2 = a + gr * (bnd - a);
    EvalResult rx1 = ev.eval(base + x1 * dir, false);
    EvalResult rx2 = ev.eval(base + x2 * dir, false);
    evals += 2;
    double f1 = rx1.value, f2 = rx2.value;
    for (int it = 0; it < 16 && evals < 650; ++it) {
      if (f1 < f2) {
        bnd = x2;
        x2 = x1;
        f2 = f1;
        rx2 = rx1;
        x1 = bnd - gr * (bnd - a);
        rx1 = ev.eval(base + x1 * dir, false);
        f1 = rx1.value;
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        rx1 = rx2;
        x2 = a + gr * (bnd - a);
        rx2 = ev.eval(base + x2 * dir, false);
        f2 = rx2.value;
      }
      ++evals;
    }
    if (f1 < f_mid) {
      f_mid = f1;
      t_best = x1;
      r_best = rx1;
    }
    if (f2 < f_mid) {
      f_mid = f2;
      t_best = x2;
      r_best = rx2;
    }
    best_xi = base + t_best * dir;
    best_val = f_mid;
    best_res = r_best;
    h = std::max(t_best, 1e-12);
  }

  // Root polish of the coupling form sharpens xi* by orders of magnitude in
  // the smooth case.
  const Complex polished = polish_root(ev, lambda, best_xi, rho0 * sn_s);
  const double val_polished = ev.eval(polished, false).value;
  if (val_polished < best_val) {
    best_val = val_polished;
    best_xi = polished;
  }

  // Final full-quality values with the accumulated pool; all rho values are
  // attained lower bounds, so the max of repeated evaluations is sharpest.
  const double rho0_final = std::max(rho0, ev.eval(Complex(0.0, 0.0), true).value);
  const double rho_best_final = std::max(best_val, ev.eval(best_xi, true).value);
  v.rho_zero = rho0_final;
  if (rho_best_final < rho0_final) {
    v.rho_min = rho_best_final;
    v.xi_star = best_xi;
  } else {
    v.rho_min = rho0_final;
    v.xi_star = Complex(0.0, 0.0);
  }
  v.relative_gap = (v.rho_zero - v.rho_min) / std::max(v.rho_zero, kGapFloor);
  v.orthogonal = v.relative_gap <= tolerance;
  return v;
}

CertificateReport certificate_check(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const PositiveOperator& a, Lambda lambda,
                                    const OrthogonalityVerdict& verdict, int xi_samples,
                                    const OptimizerConfig& cfg) {
  CertificateReport rep;
  rep.applicable = verdict.orthogonal;
  if (!rep.applicable) return rep;

  const ReducedPair rp = reduce_pair(t, s, a);
  RhoEvaluator ev(rp.bt, rp.bs, lambda, cfg);
  const double rho0 = ev.eval(Complex(0.0, 0.0), true).value;
  const double m2 = verdict.m_value * verdict.m_value;
  const double eps_cert = 1e-6 * std::max(1.0, rho0 * rho0);

  const double sn_s = optimize_reduced(rp.bs, lambda, ExtremalMode::Sup, cfg).value;
  const double s_scale = rho0 / std::max({verdict.m_value, sn_s, 1e-12});
  const double radius = std::min(4.0 * s_scale, 1e6 * std::max(1.0, rho0));

  const int n_angles = 8;
  const int n_radii = std::max(1, xi_samples / n_angles);
  rep.worst_margin = 1e300;
  for (int i = 0; i < n_radii; ++i) {
    const double r = radius * (0.01 + 0.99 * std::pow(static_cast<double>(i) / std::max(1, n_radii - 1), 2.0));
    for (int k = 0; k < n_angles; ++k) {
      const Complex xi = std::polar(std::max(r, 1e-6 * radius), 2.0 * M_PI * k / n_angles);
      const double rv = ev.eval(xi, false).value;
      const double margin = rv * rv - rho0 * rho0 - std::norm(xi) * m2;
      rep.worst_margin = std::min(rep.worst_margin, margin);
      ++rep.samples;
    }
  }
  rep.passed = rep.worst_margin >= -eps_cert;
  return rep;
}

ThetaConditionReport theta_condition(const ComplexMatrix& t, const ComplexMatrix& s,
                                     const PositiveOperator& a, Lambda lambda,
                                     const OptimizerConfig& cfg, int theta_count) {
  const ReducedPair rp = reduce_pair(t, s, a);
  ThetaConditionReport rep;

  const EvalResult t_res = optimize_reduced(rp.bt, lambda, ExtremalMode::Sup, cfg);
  const EvalResult s_res = optimize_reduced(rp.bs, lambda, ExtremalMode::Sup, cfg);
  const double sn_t = t_res.value, sn_s = s_res.value;
  const double t_obj = sn_t * sn_t;

  rep.eps_max = 1e-6 * t_obj + 1e-14 * std::max(1.0, rp.bt.frobenius_norm());
  rep.eps_sign =
      1e-6 * sn_t * sn_s + 1e-12 * std::max(1.0, rp.bt.frobenius_norm() * rp.bs.frobenius_norm());

  for (const PoolEntry& e : t_res.pool)
    if (t_obj - e.objective <= rep.eps_max) rep.pool.push_back(e);
  if (rep.pool.empty() && !t_res.witness.empty())
    rep.pool.push_back({t_res.witness, t_obj});

  // Directional enrichment of the pool. The maximizer the condition needs at
  // angle phi is the limit of maximizers of T + delta e^{i phi} S as
  // delta -> 0; a continuation that starts in the S-dominated regime and
  // shrinks delta tracks that branch even when it is far from the incumbent
  // T-maximizer. Endpoints enter the pool only if they pass the defect
  // filter, so this never dilutes the near-maximizer semantics.
  const auto enrich_angle = [&](double phi) {
    if (sn_t <= 0.0 || sn_s <= 0.0 || s_res.witness.empty()) return;
    const double ratio = sn_t / sn_s;
    Vector y = s_res.witness;
    for (double factor = 4.0; factor >= 0.5e-7; factor *= 0.2) {
      const Complex tilt = std::polar(factor * ratio, phi);
      y = refine_witness(rp.bt + rp.bs.scaled(tilt), lambda, ExtremalMode::Sup, y, cfg).witness;
    }
    y = refine_witness(rp.bt, lambda, ExtremalMode::Sup, y, cfg).witness;
    const double obj = objective(rp.bt, lambda, y);
    if (t_obj - obj > rep.eps_max) return;
    for (const PoolEntry& e : rep.pool)
      if (std::abs(dot(y, e.y)) >= 1.0 - 1e-8) return;
    rep.pool.push_back({y, obj});
  };
  for (int k = 0; k < 16; ++k) enrich_angle(2.0 * M_PI * k / 16.0);

  rep.theta.resize(static_cast<std::size_t>(theta_count));
  rep.form_value.resize(rep.theta.size());
  rep.maximality_defect.resize(rep.theta.size());
  rep.best_index.resize(rep.theta.size(), -1);

  const auto evaluate_grid = [&]() {
    std::vector<Complex> forms(rep.pool.size());
    for (std::size_t j = 0; j < rep.pool.size(); ++j)
      forms[j] = coupling_form(rp.bt, rp.bs, lambda, rep.pool[j].y);
    rep.satisfied = true;
    for (int k = 0; k < theta_count; ++k) {
      const double theta = 2.0 * M_PI * k / theta_count;
      rep.theta[static_cast<std::size_t>(k)] = theta;
      const Complex phase = std::polar(1.0, theta);
      double best = rep.pool.empty() ? 0.0 : -1e300;
      int best_j = -1;
      for (std::size_t j = 0; j < rep.pool.size(); ++j) {
        const double val = (phase * forms[j]).real();
        if (val > best) {
          best = val;
          best_j = static_cast<int>(j);
        }
      }
      rep.form_value[static_cast<std::size_t>(k)] = best;
      rep.best_index[static_cast<std::size_t>(k)] = best_j;
      rep.maximality_defect[static_cast<std::size_t>(k)] =
          best_j < 0 ? 0.0 : t_obj - rep.pool[static_cast<std::size_t>(best_j)].objective;
      if (best < -rep.eps_sign) rep.satisfied = false;
    }
  };

  evaluate_grid();
  // Adaptive rounds: enrich exactly at the failing angles (the witness the
  // condition needs at angle theta is the limit along that same direction).
  for (int round = 0; round < 2 && !rep.satisfied; ++round) {
    std::vector<double> failing;
    for (std::size_t k = 0; k < rep.theta.size(); ++k)
      if (rep.form_value[k] < -rep.eps_sign) failing.push_back(rep.theta[k]);
    if (failing.empty()) break;
    const std::size_t stride = std::max<std::size_t>(1, failing.size() / 24);
    const std::size_t before = rep.pool.size();
    for (std::size_t k = 0; k < failing.size(); k += stride) enrich_angle(failing[k]);
    if (rep.pool.size() == before) break;
    evaluate_grid();
  }
  return rep;
}

EqualityReport triangle_equality(const ComplexMatrix& t, const ComplexMatrix& s,
                                 const PositiveOperator& a, Lambda lambda,
                                 const OptimizerConfig& cfg) {
  const ReducedPair rp = reduce_pair(t, s, a);
  EqualityReport rep;

  const EvalResult sum_res = optimize_reduced(rp.bt + rp.bs, lambda, ExtremalMode::Sup, cfg);
  // Cross-seeding with the sum's witnesses keeps the three heuristic sups
  // consistent exactly where equality is tight (shared maximizers).
  std::vector<Vector> warm;
  if (!sum_res.witness.empty()) warm.push_back(sum_res.witness);
  for (std::size_t i = 0; i < sum_res.pool.size() && i < 4; ++i) warm.push_back(sum_res.pool[i].y);
  const std::span<const Vector> warm_span(warm);
  const double sn_t = optimize_reduced(rp.bt, lambda, ExtremalMode::Sup, cfg, warm_span).value;
  const double sn_s = optimize_reduced(rp.bs, lambda, ExtremalMode::Sup, cfg, warm_span).value;

  rep.sum_seminorm = sum_res.value;
  rep.seminorm_sum = sn_t + sn_s;
  rep.target = sn_t * sn_s;
  rep.tol_eq = 1e-6 * std::max(1.0, rep.seminorm_sum);
  rep.holds = (rep.seminorm_sum - rep.sum_seminorm) <= rep.tol_eq;

  // The best witness is the (T+S)-maximizer whose coupling value lands
  // closest to the product of seminorms.
  if (!sum_res.witness.empty()) {
    const double sum_obj = sum_res.value * sum_res.value;
    const double eps_max = 1e-6 * sum_obj + 1e-14;
    Complex best_z(0.0, 0.0);
    Vector best_y = sum_res.witness;
    double best_dist = 1e300;
    auto consider = [&](const Vector& y, double obj) {
      if (sum_obj - obj > eps_max) return;
      const Complex z = coupling_form(rp.bt, rp.bs, lambda, y);
      const double d = std::abs(z - Complex(rep.target, 0.0));
      if (d < best_dist) {
        best_dist = d;
        best_z = z;
        best_y = y;
      }
    };
    consider(sum_res.witness, sum_obj);
    for (const PoolEntry& e : sum_res.pool) consider(e.y, e.objective);
    rep.witness_value = best_z;
    rep.witness = a.rank > 0 ? lift(best_y, a) : Vector(a.dim(), Complex(0.0, 0.0));
  } else {
    rep.witness.assign(a.dim(), Complex(0.0, 0.0));
  }
  return rep;
}

}  // namespace semiop
