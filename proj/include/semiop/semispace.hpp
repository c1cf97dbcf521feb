/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "semiop/matrix.hpp"

namespace semiop {

/// A validated positive semidefinite operator A together with the cached
/// spectral data every A-dependent computation needs: A^{1/2}, its
/// pseudoinverse, and orthonormal bases of range(A) and ker(A).
///
/// Immutable after construction; safe to share between threads.
struct PositiveOperator {
  ComplexMatrix a;
  HermitianEigen eigen;         // of a, eigenvalues clamped to >= 0
  std::size_t rank = 0;
  ComplexMatrix range_basis;    // n x r, orthonormal columns
  ComplexMatrix kernel_basis;   // n x (n - r), orthonormal columns
  ComplexMatrix sqrt;           // A^{1/2}
  ComplexMatrix sqrt_pinv;      // (A^{1/2})^+
  double tau_rank = 0.0;        // eigenvalues <= tau_rank are exact zeros

  std::size_t dim() const { return a.dim(); }
};

/// Validates Hermitian-ness and positivity, then builds the caches.
/// tau_rank <= 0 selects the default cutoff 1e-10 * lambda_max(A).
///
/// Throws NotHermitian or NotPositive (an eigenvalue below -eps_herm with
/// eps_herm = 1e-10 * max(1, ||a||_F)).
PositiveOperator make_positive(const ComplexMatrix& a, double tau_rank = 0.0);

/// <x, y>_A = <A x, y>. Conjugate-symmetric up to roundoff.
Complex a_inner(const Vector& x, const Vector& y, const PositiveOperator& a);

/// ||x||_A = sqrt(<x, x>_A), clamped at zero.
double a_norm(const Vector& x, const PositiveOperator& a);

/// Finite-dimensional finiteness criterion for the A-operator seminorm:
/// T has an A^{1/2}-adjoint iff ker(A) is contained in ker(A^{1/2} T),
/// tested as ||A^{1/2} T k|| <= 1e-8 * ||T||_F on each kernel basis column.
bool is_member(const ComplexMatrix& t, const PositiveOperator& a);

/// The compression of T to range(A): b = V* A^{1/2} T (A^{1/2})^+ V with
/// V = range_basis. For members, every A-seminorm quantity of T equals the
/// corresponding plain quantity of b on the unit sphere of C^r.
struct ReducedOperator {
  ComplexMatrix b;  // r x r
};

/// Throws NotMember when is_member(t, a) fails.
ReducedOperator reduce(const ComplexMatrix& t, const PositiveOperator& a);

/// Lifts a unit vector of the reduced space to an A-unit vector:
/// x = (A^{1/2})^+ V y, so that V* A^{1/2} x = y. The lift is onto the
/// reduced unit sphere.
Vector lift(const Vector& y, const PositiveOperator& a);

/// y = V* A^{1/2} x, the reduced image of x.
Vector reduce_vector(const Vector& x, const PositiveOperator& a);

}  // namespace semiop
