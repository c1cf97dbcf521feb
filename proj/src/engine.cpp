/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "semiop/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "semiop/rng.hpp"

namespace semiop {

Lambda::Lambda(double v) : value(v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
}

namespace {

void check_config(const OptimizerConfig& cfg) {
  if (cfg.restarts <= 0 || cfg.theta_grid <= 0 || cfg.max_iters <= 0 || cfg.grad_tol <= 0.0)
    throw std::invalid_argument("optimizer config fields must be positive");
}

double objective_unchecked(const ComplexMatrix& b, double lambda, const Vector& y) {
  const Vector u = b.apply(y);
  double nrm2 = 0.0;
  for (const auto& z : u) nrm2 += std::norm(z);
  const Complex q = dot(u, y);
  return lambda * nrm2 + (1.0 - lambda) * std::norm(q);
}

/// Gradient of the objective in the real 2r-parametrization, expressed as a
/// complex vector G with df = 2 Re(<G, h>); tangent projection happens at
/// the call site.
Vector objective_gradient(const ComplexMatrix& b, double lambda, const Vector& y) {
  const Vector u = b.apply(y);          // b y
  const Vector w = b.apply_adjoint(y);  // b* y
  const Complex q = dot(u, y);
  const Vector bu = b.apply_adjoint(u); // b* b y
  Vector g(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    g[i] = 2.0 * lambda * bu[i] + 2.0 * (1.0 - lambda) * (std::conj(q) * u[i] + q * w[i]);
  return g;
}

/// (e^{i theta} b + e^{-i theta} b*) / 2.
ComplexMatrix rotated_hermitian_part(const ComplexMatrix& b, double theta) {
  const Complex phase = std::polar(1.0, theta);
  const std::size_t r = b.dim();
  ComplexMatrix h(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      h(i, j) = 0.5 * (phase * b(i, j) + std::conj(phase) * std::conj(b(j, i)));
  return h;
}

double extreme_eigenvalue(const ComplexMatrix& h, bool top, Vector* vec = nullptr) {
  const HermitianEigen eig = hermitian_eigen(h);
  const std::size_t idx = top ? h.dim() - 1 : 0;
  if (vec) {
    vec->resize(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) (*vec)[i] = eig.eigenvectors(i, idx);
  }
  return eig.eigenvalues[idx];
}

/// Golden-section refinement of f on [lo, hi]; maximizes.
double refine_max_1d(const std::function<double(double)>& f, double lo, double hi, double* argmax) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (argmax) *argmax = xm;
  return std::max(fm, std::max(f1, f2));
}

/// max over theta of the extreme eigenvalue of (e^{i theta} b + h.c.)/2:
/// grid scan plus golden-section refinement around the leading local maxima.
/// `top` selects lambda_max (numerical radius) vs lambda_min (Crawford).
double eigen_sweep(const ComplexMatrix& b, int grid, bool top, int refine_candidates) {
  const std::size_t r = b.dim();
  if (r == 0) return 0.0;
  std::vector<double> vals(static_cast<std::size_t>(grid));
  const double step = 2.0 * M_PI / grid;
  for (int j = 0; j < grid; ++j)
    vals[static_cast<std::size_t>(j)] = extreme_eigenvalue(rotated_hermitian_part(b, j * step), top);

  // Local maxima on the circular grid, best first.
  std::vector<std::size_t> candidates;
  for (int j = 0; j < grid; ++j) {
    const double prev = vals[static_cast<std::size_t>((j + grid - 1) % grid)];
    const double next = vals[static_cast<std::size_t>((j + 1) % grid)];
    const double cur = vals[static_cast<std::size_t>(j)];
    if (cur >= prev && cur >= next) candidates.push_back(static_cast<std::size_t>(j));
  }
  if (candidates.empty()) candidates.push_back(0);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&vals](std::size_t i, std::size_t j) { return vals[i] > vals[j]; });
  if (static_cast<int>(candidates.size()) > refine_candidates)
    candidates.resize(static_cast<std::size_t>(refine_candidates));

  const auto g = [&](double theta) { return extreme_eigenvalue(rotated_hermitian_part(b, theta), top); };
  double best = -1e300;
  for (std::size_t c : candidates) {
    const double theta0 = static_cast<double>(c) * step;
    best = std::max(best, std::max(vals[c], refine_max_1d(g, theta0 - step, theta0 + step, nullptr)));
  }
  return best;
}

Vector random_unit(Rng& rng, std::size_t r) {
  Vector y(r);
  for (auto& z : y) z = rng.next_complex_gaussian();
  Vector n = normalized(y);
  if (vec_norm(n) == 0.0) {
    n.assign(r, Complex(0.0, 0.0));
    n[0] = 1.0;
  }
  return n;
}

struct AscentOutcome {
  Vector y;
  double f = 0.0;
  double residual = 0.0;
};

/// Projected gradient ascent (sign = +1) or descent (-1) on the unit sphere,
/// Armijo backtracking from a unit step.
AscentOutcome run_ascent(const ComplexMatrix& b, double lam, double sign, Vector y,
                         int max_iters, double grad_tol) {
  const std::size_t r = b.dim();
  AscentOutcome out;
  double fy = objective_unchecked(b, lam, y);
  double residual = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vector g = objective_gradient(b, lam, y);
    const double radial = dot(g, y).real();
    for (std::size_t i = 0; i < r; ++i) g[i] -= radial * y[i];
    residual = vec_norm(g);
    if (residual <= grad_tol) break;

    double alpha = 1.0;
    bool improved = false;
    while (alpha >= 1e-20) {
      Vector ynew(r);
      for (std::size_t i = 0; i < r; ++i) ynew[i] = y[i] + sign * alpha * g[i];
      ynew = normalized(ynew);
      const double fnew = objective_unchecked(b, lam, ynew);
      if (sign * (fnew - fy) >= 1e-4 * alpha * residual * residual) {
        y = std::move(ynew);
        fy = fnew;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;  // at floating-point resolution of the objective
  }
  out.y = std::move(y);
  out.f = fy;
  out.residual = residual;
  return out;
}

void pool_insert(std::vector<PoolEntry>& pool, const Vector& y, double obj, bool sup) {
  for (auto& e : pool) {
    if (std::abs(dot(y, e.y)) >= 1.0 - 1e-8) {
      if (sup ? (obj > e.objective) : (obj < e.objective)) e = {y, obj};
      return;
    }
  }
  pool.push_back({y, obj});
}

}  // namespace

double objective(const ComplexMatrix& b, Lambda lambda, const Vector& y) {
  if (y.size() != b.dim()) throw DimensionMismatch("objective: dimension mismatch");
  if (std::abs(vec_norm(y) - 1.0) > 1e-10) throw NotUnit("objective: vector is not unit");
  return objective_unchecked(b, lambda.value, y);
}

namespace {

/// Unit-Frobenius rescale with the phase of the dominant entry divided out.
/// The objective is |c|^2-homogeneous in b, so every operator c*b optimizes
/// through the identical normalized problem: homogeneity of the computed
/// seminorm then holds by construction, not by optimizer luck.
ComplexMatrix canonical_rescale(const ComplexMatrix& b, double fro) {
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (std::abs(b(i, j)) > best) {
        best = std::abs(b(i, j));
        bi = i;
        bj = j;
      }
  const Complex lead = b(bi, bj);
  const Complex scale = std::conj(lead / std::abs(lead)) / fro;
  return b.scaled(scale);
}

}  // namespace

EvalResult optimize_reduced(const ComplexMatrix& b, Lambda lambda, ExtremalMode mode,
                            const OptimizerConfig& cfg, std::span<const Vector> warm_seeds) {
  check_config(cfg);
  if (!b.is_square()) throw DimensionMismatch("optimize_reduced: matrix not square");
  const std::size_t r = b.dim();

  EvalResult res;
  res.mode = mode;
  if (r == 0) {
    // Empty reduced space (A = 0): every extremal quantity is defined as 0.
    res.certified = true;
    return res;
  }
  if (r == 1) {
    res.value = std::abs(b(0, 0));
    res.witness = {Complex(1.0, 0.0)};
    res.certified = true;
    res.restarts_used = 1;
    res.pool.push_back({res.witness, res.value * res.value});
    return res;
  }
  const double fro = b.frobenius_norm();
  if (fro == 0.0) {
    res.witness.assign(r, Complex(0.0, 0.0));
    res.witness[0] = 1.0;
    res.certified = true;
    res.restarts_used = 1;
    res.pool.push_back({res.witness, 0.0});
    return res;
  }
  const ComplexMatrix bn = canonical_rescale(b, fro);

  const bool sup = (mode == ExtremalMode::Sup);
  const double sign = sup ? 1.0 : -1.0;
  const double lam = lambda.value;

  // Seed list: singular-vector seed, theta-sweep eigenvectors (both the
  // objective-ranked ones and the eigenvalue-curve local maxima), warm pool,
  // then random restarts.
  std::vector<Vector> seeds;
  {
    Vector sv;
    const HermitianEigen btb = hermitian_eigen(bn.adjoint() * bn);
    const std::size_t idx = sup ? r - 1 : 0;
    sv.resize(r);
    for (std::size_t i = 0; i < r; ++i) sv[i] = btb.eigenvectors(i, idx);
    seeds.push_back(normalized(sv));
  }
  {
    const double step = 2.0 * M_PI / cfg.theta_grid;
    std::vector<double> score(static_cast<std::size_t>(cfg.theta_grid));
    std::vector<double> eigval(static_cast<std::size_t>(cfg.theta_grid));
    std::vector<Vector> vecs(static_cast<std::size_t>(cfg.theta_grid));
    for (int j = 0; j < cfg.theta_grid; ++j) {
      Vector v;
      eigval[static_cast<std::size_t>(j)] =
          extreme_eigenvalue(rotated_hermitian_part(bn, j * step), sup, &v);
      v = normalized(v);
      score[static_cast<std::size_t>(j)] = objective_unchecked(bn, lam, v);
      vecs[static_cast<std::size_t>(j)] = std::move(v);
    }
    // Best basins for the mixed objective.
    std::vector<std::size_t> order(vecs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return sup ? (score[x] > score[y]) : (score[x] < score[y]);
    });
    for (std::size_t j = 0; j < order.size() && j < 6; ++j) seeds.push_back(vecs[order[j]]);
    // Local extrema of the eigenvalue curve itself (the numerical-radius /
    // Crawford directions).
    std::vector<std::size_t> local;
    const int grid = cfg.theta_grid;
    for (int j = 0; j < grid; ++j) {
      const double prev = eigval[static_cast<std::size_t>((j + grid - 1) % grid)];
      const double next = eigval[static_cast<std::size_t>((j + 1) % grid)];
      const double cur = eigval[static_cast<std::size_t>(j)];
      if (sup ? (cur >= prev && cur >= next) : (cur <= prev && cur <= next))
        local.push_back(static_cast<std::size_t>(j));
    }
    std::stable_sort(local.begin(), local.end(), [&](std::size_t x, std::size_t y) {
      return sup ? (eigval[x] > eigval[y]) : (eigval[x] < eigval[y]);
    });
    for (std::size_t j = 0; j < local.size() && j < 4; ++j) seeds.push_back(vecs[local[j]]);
  }
  const std::size_t fixed_seeds = seeds.size();
  for (const auto& s : warm_seeds)
    if (s.size() == r) seeds.push_back(normalized(s));
  Rng rng = Rng::split(cfg.seed, 0xA5CE17);
  const std::size_t want =
      std::max(seeds.size() + 4, fixed_seeds + static_cast<std::size_t>(cfg.restarts));
  while (seeds.size() < want) seeds.push_back(random_unit(rng, r));

  double best_obj = sup ? -1e300 : 1e300;
  Vector best_y;
  double best_residual = 0.0;
  std::vector<PoolEntry> pool;
  const auto consider = [&](const AscentOutcome& oc) {
    const bool better = sup ? (oc.f > best_obj) : (oc.f < best_obj);
    if (better) {
      best_obj = oc.f;
      best_y = oc.y;
      best_residual = oc.residual;
    }
    pool_insert(pool, oc.y, oc.f, sup);
  };

  for (const Vector& seed : seeds) consider(run_ascent(bn, lam, sign, seed, cfg.max_iters, cfg.grad_tol));

  // Tangent kicks around the incumbent escape shallow neighboring basins.
  for (int k = 0; k < 6; ++k) {
    const double size = (k % 3 == 0) ? 0.05 : (k % 3 == 1 ? 0.2 : 0.5);
    Vector y(r);
    for (std::size_t i = 0; i < r; ++i) y[i] = best_y[i] + size * rng.next_complex_gaussian();
    consider(run_ascent(bn, lam, sign, normalized(y), cfg.max_iters, cfg.grad_tol));
  }

  std::stable_sort(pool.begin(), pool.end(), [sup](const PoolEntry& a, const PoolEntry& b) {
    return sup ? (a.objective > b.objective) : (a.objective < b.objective);
  });
  if (pool.size() > 32) pool.resize(32);
  for (PoolEntry& e : pool) e.objective *= fro * fro;

  res.value = fro * std::sqrt(std::max(0.0, best_obj));
  res.witness = best_y;
  res.restarts_used = static_cast<int>(seeds.size());
  res.stationarity_residual = best_residual * fro * fro;
  res.pool = std::move(pool);
  return res;
}

EvalResult refine_witness(const ComplexMatrix& b, Lambda lambda, ExtremalMode mode,
                          const Vector& start, const OptimizerConfig& cfg) {
  check_config(cfg);
  if (!b.is_square() || start.size() != b.dim())
    throw DimensionMismatch("refine_witness: dimension mismatch");
  EvalResult res;
  res.mode = mode;
  const double fro = b.frobenius_norm();
  if (b.dim() == 0 || fro == 0.0) return optimize_reduced(b, lambda, mode, cfg);
  const ComplexMatrix bn = canonical_rescale(b, fro);
  const AscentOutcome oc = run_ascent(bn, lambda.value, mode == ExtremalMode::Sup ? 1.0 : -1.0,
                                      normalized(start), cfg.max_iters, cfg.grad_tol);
  res.value = fro * std::sqrt(std::max(0.0, oc.f));
  res.witness = oc.y;
  res.restarts_used = 1;
  res.stationarity_residual = oc.residual * fro * fro;
  res.pool.push_back({oc.y, oc.f * fro * fro});
  return res;
}

double numerical_radius_sweep(const ComplexMatrix& b, int theta_grid) {
  if (b.dim() == 0) return 0.0;
  if (b.dim() == 1) return std::abs(b(0, 0));
  return eigen_sweep(b, theta_grid, /*top=*/true, 4);
}

double crawford_sweep(const ComplexMatrix& b, int theta_grid) {
  if (b.dim() == 0) return 0.0;
  if (b.dim() == 1) return std::abs(b(0, 0));
  return std::max(0.0, eigen_sweep(b, theta_grid, /*top=*/false, 4));
}

namespace {

EvalResult finish(EvalResult res, const PositiveOperator& a) {
  if (res.witness.size() == a.rank && a.rank > 0) res.witness_lift = lift(res.witness, a);
  if (a.rank == 0) res.witness_lift.assign(a.dim(), Complex(0.0, 0.0));
  return res;
}

}  // namespace

EvalResult seminorm(const ComplexMatrix& t, const PositiveOperator& a, Lambda lambda,
                    const OptimizerConfig& cfg) {
  const ComplexMatrix b = reduce(t, a).b;
  EvalResult res = optimize_reduced(b, lambda, ExtremalMode::Sup, cfg);
  if (!res.certified) {
    if (lambda.value == 0.0) {
      res.certified = rel_close(res.value, numerical_radius_sweep(b, cfg.theta_grid), 1e-6);
    } else if (lambda.value == 1.0) {
      res.certified = rel_close(res.value, svd_extremes(b).sigma_max, 1e-6);
    }
  }
  return finish(std::move(res), a);
}

EvalResult a_numerical_radius(const ComplexMatrix& t, const PositiveOperator& a,
                              const OptimizerConfig& cfg) {
  const ComplexMatrix b = reduce(t, a).b;
  EvalResult res = optimize_reduced(b, Lambda(0.0), ExtremalMode::Sup, cfg);
  res.certified = rel_close(res.value, numerical_radius_sweep(b, cfg.theta_grid), 1e-6);
  return finish(std::move(res), a);
}

EvalResult a_crawford(const ComplexMatrix& t, const PositiveOperator& a,
                      const OptimizerConfig& cfg) {
  const ComplexMatrix b = reduce(t, a).b;
  EvalResult res = optimize_reduced(b, Lambda(0.0), ExtremalMode::Inf, cfg);
  // The sweep value is exact by convexity of the numerical range; the
  // descent witness must meet it from above for a certificate.
  res.certified = rel_close(res.value, crawford_sweep(b, cfg.theta_grid), 1e-6);
  return finish(std::move(res), a);
}

EvalResult a_min_modulus(const ComplexMatrix& t, const PositiveOperator& a,
                         const OptimizerConfig& cfg) {
  const ComplexMatrix b = reduce(t, a).b;
  EvalResult res = optimize_reduced(b, Lambda(1.0), ExtremalMode::Inf, cfg);
  res.certified = rel_close(res.value, svd_extremes(b).sigma_min, 1e-6);
  return finish(std::move(res), a);
}

EvalResult m_lambda(const ComplexMatrix& s, const PositiveOperator& a, Lambda lambda,
                    const OptimizerConfig& cfg) {
  const ComplexMatrix b = reduce(s, a).b;
  EvalResult res = optimize_reduced(b, lambda, ExtremalMode::Inf, cfg);
  if (!res.certified) {
    if (lambda.value == 0.0) {
      res.certified = rel_close(res.value, crawford_sweep(b, cfg.theta_grid), 1e-6);
    } else if (lambda.value == 1.0) {
      res.certified = rel_close(res.value, svd_extremes(b).sigma_min, 1e-6);
    }
  }
  return finish(std::move(res), a);
}

namespace {

struct ScanAccumulator {
  std::vector<double> sup, inf;
  const std::vector<double>* lambdas = nullptr;

  explicit ScanAccumulator(const std::vector<double>& ls)
      : sup(ls.size(), -1e300), inf(ls.size(), 1e300), lambdas(&ls) {}

  /// u2 = ||b y||^2 and v2 = |<b y, y>|^2 combine per lambda.
  void update(double u2, double v2) {
    for (std::size_t k = 0; k < lambdas->size(); ++k) {
      const double lam = (*lambdas)[k];
      const double f = lam * u2 + (1.0 - lam) * v2;
      if (f > sup[k]) sup[k] = f;
      if (f < inf[k]) inf[k] = f;
    }
  }
};

void scan_point(const ComplexMatrix& b, const Vector& y, ScanAccumulator& acc) {
  const Vector u = b.apply(y);
  double u2 = 0.0;
  for (const auto& z : u) u2 += std::norm(z);
  acc.update(u2, std::norm(dot(u, y)));
}

}  // namespace

std::vector<OracleExtremes> oracle_scan_all(const ComplexMatrix& b,
                                            std::span<const double> lambdas, double delta) {
  if (!b.is_square()) throw DimensionMismatch("oracle: matrix not square");
  const std::size_t r = b.dim();
  if (r == 0 || r > 3) throw DimensionTooLarge("oracle: reduced dimension must be 1..3");
  if (delta <= 0.0) throw std::invalid_argument("oracle: delta must be positive");
  std::vector<double> ls(lambdas.begin(), lambdas.end());
  for (double l : ls)
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("oracle: lambda outside [0, 1]");

  ScanAccumulator acc(ls);
  if (r == 1) {
    scan_point(b, {Complex(1.0, 0.0)}, acc);
  } else {
    const int na = static_cast<int>(std::ceil((M_PI / 2.0) / delta)) + 1;
    const int nb = static_cast<int>(std::ceil((2.0 * M_PI) / delta));
    std::vector<Complex> phase(static_cast<std::size_t>(nb));
    for (int j = 0; j < nb; ++j) phase[static_cast<std::size_t>(j)] = std::polar(1.0, j * delta);
    if (r == 2) {
      const Complex b00 = b(0, 0), b01 = b(0, 1), b10 = b(1, 0), b11 = b(1, 1);
      for (int ia = 0; ia < na; ++ia) {
        const double alpha = std::min(M_PI / 2.0, ia * delta);
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        for (int ib = 0; ib < nb; ++ib) {
          const Complex y1 = sa * phase[static_cast<std::size_t>(ib)];
          const Complex u0 = b00 * ca + b01 * y1;
          const Complex u1 = b10 * ca + b11 * y1;
          const double u2 = std::norm(u0) + std::norm(u1);
          const Complex q = ca * u0 + std::conj(y1) * u1;
          acc.update(u2, std::norm(q));
        }
      }
    } else {
      // y = (cos a1, e^{i b1} sin a1 cos a2, e^{i b2} sin a1 sin a2).
      Vector y(3);
      for (int i1 = 0; i1 < na; ++i1) {
        const double a1 = std::min(M_PI / 2.0, i1 * delta);
        const double c1 = std::cos(a1), s1 = std::sin(a1);
        for (int i2 = 0; i2 < na; ++i2) {
          const double a2 = std::min(M_PI / 2.0, i2 * delta);
          const double c2 = std::cos(a2), s2 = std::sin(a2);
          for (int j1 = 0; j1 < nb; ++j1) {
            for (int j2 = 0; j2 < nb; ++j2) {
              y[0] = Complex(c1, 0.0);
              y[1] = s1 * c2 * phase[static_cast<std::size_t>(j1)];
              y[2] = s1 * s2 * phase[static_cast<std::size_t>(j2)];
              scan_point(b, y, acc);
            }
          }
        }
      }
    }
  }

  const double smax = svd_extremes(b).sigma_max;
  const double bound = 4.0 * smax * smax * delta;
  std::vector<OracleExtremes> out(ls.size());
  for (std::size_t k = 0; k < ls.size(); ++k) out[k] = {acc.sup[k], acc.inf[k], bound};
  return out;
}

OracleResult oracle_sup(const ComplexMatrix& b, Lambda lambda, double delta) {
  const double l = lambda.value;
  const auto res = oracle_scan_all(b, std::span<const double>(&l, 1), delta);
  return {res[0].sup, res[0].error_bound};
}

OracleResult oracle_inf(const ComplexMatrix& b, Lambda lambda, double delta) {
  const double l = lambda.value;
  const auto res = oracle_scan_all(b, std::span<const double>(&l, 1), delta);
  return {res[0].inf, res[0].error_bound};
}

}  // namespace semiop
