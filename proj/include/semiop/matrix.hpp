/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "semiop/errors.hpp"

namespace semiop {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

// ---------------------------------------------------------------------------
// Vector helpers. Inner products are linear in the FIRST argument:
// dot(u, v) = sum_i conj(v_i) * u_i, matching <u, v>.
// ---------------------------------------------------------------------------

Complex dot(const Vector& u, const Vector& v);
double vec_norm(const Vector& v);
Vector normalized(const Vector& v);
Vector vec_add(const Vector& u, const Vector& v);
Vector vec_scale(Complex alpha, const Vector& v);

/// |a - b| <= tol * max(|a|, |b|) + 1e-12; the absolute floor keeps
/// comparisons of near-zero quantities meaningful.
bool rel_close(double a, double b, double tol);

/// Dense complex matrix, row-major. Operators are square; the rectangular
/// case only appears for internal orthonormal bases (n x r).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);
  /// Validates rectangular shape and finite entries.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  /// Dimension of a square operator.
  std::size_t dim() const { return rows_; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<Complex>& data() const { return a_; }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;
  bool all_finite() const;

  Vector apply(const Vector& x) const;           // M x
  Vector apply_adjoint(const Vector& x) const;   // M* x

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix scaled(Complex alpha) const;

  bool operator==(const ComplexMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

inline ComplexMatrix operator*(Complex alpha, const ComplexMatrix& m) { return m.scaled(alpha); }

/// Result of a Hermitian eigendecomposition: M = U diag(mu) U* with the
/// eigenvalues ascending and U's columns orthonormal.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi eigensolver. Accurate and dependency-free at the
/// dimensions this library targets (n <= ~64).
///
/// Throws NotHermitian if ||M - M*||_F > 1e-10 * max(1, ||M||_F) and
/// NoConvergence if the sweeps fail to drive the off-diagonal mass down.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

struct SvdExtremes {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

/// Extremal singular values via the spectrum of M*M.
SvdExtremes svd_extremes(const ComplexMatrix& m);

}  // namespace semiop
