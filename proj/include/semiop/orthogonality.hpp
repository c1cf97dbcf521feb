/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "semiop/engine.hpp"

namespace semiop {

/// lambda*<Sy, Ty> + (1-lambda)*<y, Ty><Sy, y> in reduced coordinates.
/// The sign pattern of Re(e^{i theta} . ) over theta characterizes
/// orthogonality at a maximizer; its value characterizes triangle equality.
Complex coupling_form(const ComplexMatrix& bt, const ComplexMatrix& bs, Lambda lambda,
                      const Vector& y);

/// Decision record for T being (A,lambda)-Birkhoff-James orthogonal to S.
struct OrthogonalityVerdict {
  bool orthogonal = false;
  Complex xi_star{0.0, 0.0};   // approximate minimizer of rho
  double rho_zero = 0.0;       // ||T||_(A,lambda)
  double rho_min = 0.0;        // min over xi of ||T + xi S||_(A,lambda)
  double relative_gap = 0.0;   // (rho_zero - rho_min) / max(rho_zero, eps)
  double m_value = 0.0;        // m_(A,lambda)(S)
  double tolerance_used = 1e-5;
};

struct CertificateReport {
  bool applicable = false;  // the lower-bound certificate only binds orthogonal pairs
  bool passed = false;
  int samples = 0;
  double worst_margin = 0.0;  // min over xi of rho(xi)^2 - rho(0)^2 - |xi|^2 m^2
};

struct ThetaConditionReport {
  std::vector<double> theta;
  std::vector<double> form_value;         // max over pool of Re(e^{i theta} z_j)
  std::vector<double> maximality_defect;  // ||T||^2 - objective at the chosen witness
  std::vector<int> best_index;            // pool index attaining form_value
  std::vector<PoolEntry> pool;            // near-maximizers of the T-objective (reduced)
  bool satisfied = false;
  double eps_max = 0.0;
  double eps_sign = 0.0;
};

struct EqualityReport {
  double sum_seminorm = 0.0;  // ||T + S||
  double seminorm_sum = 0.0;  // ||T|| + ||S||
  bool holds = false;
  Complex witness_value{0.0, 0.0};
  double target = 0.0;  // ||T|| * ||S||
  Vector witness;       // A-unit witness, original space
  double tol_eq = 0.0;
};

/// rho(xi) = ||T + xi S||_(A,lambda). Convex in xi.
double rho(const ComplexMatrix& t, const ComplexMatrix& s, const PositiveOperator& a,
           Lambda lambda, Complex xi, const OptimizerConfig& cfg);

/// Minimizes rho over the complex plane: coarse polar grid, compass-search
/// refinement, then a root polish of the coupling form at the running
/// maximizer. The same witness pool warm-starts every inner sup so the
/// rho values stay mutually consistent.
OrthogonalityVerdict bj_orthogonal(const ComplexMatrix& t, const ComplexMatrix& s,
                                   const PositiveOperator& a, Lambda lambda,
                                   const OptimizerConfig& cfg, double tolerance = 1e-5);

/// Samples xi on a polar grid and verifies
/// rho(xi)^2 >= rho(0)^2 + |xi|^2 m^2 - eps_cert, eps_cert = 1e-6*max(1, rho(0)^2).
CertificateReport certificate_check(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const PositiveOperator& a, Lambda lambda,
                                    const OrthogonalityVerdict& verdict, int xi_samples,
                                    const OptimizerConfig& cfg);

/// For each theta on a grid, maximizes Re(e^{i theta} z) over the pool of
/// near-maximizers of the T-objective; satisfied iff every theta attains a
/// value >= -eps_sign.
ThetaConditionReport theta_condition(const ComplexMatrix& t, const ComplexMatrix& s,
                                     const PositiveOperator& a, Lambda lambda,
                                     const OptimizerConfig& cfg, int theta_count = 360);

/// Both sides of ||T+S|| = ||T|| + ||S|| plus the coupling-form witness that
/// must approximate ||T||*||S|| when equality holds.
EqualityReport triangle_equality(const ComplexMatrix& t, const ComplexMatrix& s,
                                 const PositiveOperator& a, Lambda lambda,
                                 const OptimizerConfig& cfg);

}  // namespace semiop
