/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semiop/semispace.hpp"

namespace semiop {

/// Mixing weight between the squared A-norm term and the squared A-form
/// term; lambda = 0 gives the A-numerical radius, lambda = 1 the A-operator
/// seminorm.
struct Lambda {
  double value = 1.0;
  Lambda() = default;
  explicit Lambda(double v);
};

enum class ExtremalMode { Sup, Inf };

struct OptimizerConfig {
  int restarts = 32;
  int theta_grid = 720;
  int max_iters = 500;
  double grad_tol = 1e-10;
  std::uint64_t seed = 1;
};

struct PoolEntry {
  Vector y;           // unit vector in the reduced space
  double objective;   // lambda*||b y||^2 + (1-lambda)*|<b y, y>|^2
};

/// A computed extremal value with the witness that attains it.
/// `value` is the extremal of the square-rooted objective, so
/// objective(witness) == value^2 up to roundoff.
struct EvalResult {
  double value = 0.0;
  Vector witness;                 // reduced space, unit norm
  Vector witness_lift;            // original space, A-unit
  ExtremalMode mode = ExtremalMode::Sup;
  int restarts_used = 0;
  double stationarity_residual = 0.0;
  bool certified = false;         // an eigenvalue-sweep bound matches
  std::vector<PoolEntry> pool;    // near-extremal witnesses, best first
};

/// lambda*||b y||^2 + (1-lambda)*|<b y, y>|^2 for unit y.
/// Throws NotUnit if | ||y|| - 1 | > 1e-10.
double objective(const ComplexMatrix& b, Lambda lambda, const Vector& y);

/// Multi-start projected gradient ascent/descent on the unit sphere of the
/// reduced space. Seeds: extremal singular vectors of b, theta-sweep
/// eigenvectors, warm_seeds, then random restarts; results are merged by
/// best value, then smallest restart index, so the outcome is deterministic
/// in cfg.seed.
EvalResult optimize_reduced(const ComplexMatrix& b, Lambda lambda, ExtremalMode mode,
                            const OptimizerConfig& cfg,
                            std::span<const Vector> warm_seeds = {});

/// A single projected ascent/descent pass from `start` (no restarts); used
/// for witness continuation along perturbed operators.
EvalResult refine_witness(const ComplexMatrix& b, Lambda lambda, ExtremalMode mode,
                          const Vector& start, const OptimizerConfig& cfg);

/// max over theta of lambda_max((e^{i theta} b + e^{-i theta} b*)/2),
/// refined around grid maxima: the numerical radius of b, certified by the
/// convexity of the numerical range.
double numerical_radius_sweep(const ComplexMatrix& b, int theta_grid);

/// max(0, max over theta of lambda_min(...)): the Crawford number of b,
/// i.e. the distance from the origin to the numerical range.
double crawford_sweep(const ComplexMatrix& b, int theta_grid);

/// ||T||_(A,lambda): sup over A-unit x of
/// sqrt(lambda*||Tx||_A^2 + (1-lambda)*|<Tx,x>_A|^2).
/// Throws NotMember when T has no finite A-seminorm.
EvalResult seminorm(const ComplexMatrix& t, const PositiveOperator& a, Lambda lambda,
                    const OptimizerConfig& cfg);

/// w_A(T): the lambda = 0 case, cross-checked against the certified sweep.
EvalResult a_numerical_radius(const ComplexMatrix& t, const PositiveOperator& a,
                              const OptimizerConfig& cfg);

/// c_A(T) = inf |<Tx,x>_A| over A-unit x; the sweep gives a certified lower
/// bound, local descent supplies the witness.
EvalResult a_crawford(const ComplexMatrix& t, const PositiveOperator& a,
                      const OptimizerConfig& cfg);

/// [T]_A = inf ||Tx||_A over A-unit x = sigma_min of the reduced operator.
EvalResult a_min_modulus(const ComplexMatrix& t, const PositiveOperator& a,
                         const OptimizerConfig& cfg);

/// m_(A,lambda)(S): inf counterpart of the seminorm objective.
EvalResult m_lambda(const ComplexMatrix& s, const PositiveOperator& a, Lambda lambda,
                    const OptimizerConfig& cfg);

struct OracleResult {
  double value = 0.0;        // extremal of the objective (squared scale)
  double error_bound = 0.0;  // 4 * sigma_max(b)^2 * delta
};

struct OracleExtremes {
  double sup = 0.0;
  double inf = 0.0;
  double error_bound = 0.0;
};

/// Brute-force grid scan over a phase-fixed chart of the unit sphere
/// (r = 2: y = (cos a, e^{ib} sin a); r = 3: the analogous 4-angle chart).
/// Independent of the optimizer path; test oracle only.
/// Throws DimensionTooLarge for r > 3.
OracleResult oracle_sup(const ComplexMatrix& b, Lambda lambda, double delta);
OracleResult oracle_inf(const ComplexMatrix& b, Lambda lambda, double delta);

/// One grid pass shared by several lambdas; what the oracles above wrap.
std::vector<OracleExtremes> oracle_scan_all(const ComplexMatrix& b,
                                            std::span<const double> lambdas, double delta);

}  // namespace semiop
