/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "semiop/semispace.hpp"

#include <algorithm>
#include <cmath>

namespace semiop {

PositiveOperator make_positive(const ComplexMatrix& a, double tau_rank) {
  if (!a.is_square()) throw DimensionMismatch("make_positive: matrix not square");
  const double scale = std::max(1.0, a.frobenius_norm());
  const double eps_herm = 1e-10 * scale;
  if ((a - a.adjoint()).frobenius_norm() > eps_herm)
    throw NotHermitian("make_positive: matrix is not Hermitian");

  PositiveOperator op;
  op.a = a;
  op.eigen = hermitian_eigen(a);

  const std::size_t n = a.dim();
  for (double ev : op.eigen.eigenvalues) {
    if (ev < -eps_herm) throw NotPositive("make_positive: negative eigenvalue");
  }
  for (double& ev : op.eigen.eigenvalues) ev = std::max(ev, 0.0);

  const double lambda_max = n == 0 ? 0.0 : op.eigen.eigenvalues.back();
  op.tau_rank = tau_rank > 0.0 ? tau_rank : 1e-10 * lambda_max;

  std::vector<std::size_t> range_idx, kernel_idx;
  for (std::size_t j = 0; j < n; ++j) {
    if (op.eigen.eigenvalues[j] > op.tau_rank)
      range_idx.push_back(j);
    else
      kernel_idx.push_back(j);
  }
  op.rank = range_idx.size();

  op.range_basis = ComplexMatrix(n, range_idx.size());
  for (std::size_t c = 0; c < range_idx.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) op.range_basis(i, c) = op.eigen.eigenvectors(i, range_idx[c]);
  op.kernel_basis = ComplexMatrix(n, kernel_idx.size());
  for (std::size_t c = 0; c < kernel_idx.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) op.kernel_basis(i, c) = op.eigen.eigenvectors(i, kernel_idx[c]);

  // A^{1/2} = U diag(sqrt(mu)) U*, (A^{1/2})^+ inverts only above the cutoff.
  ComplexMatrix s(n, n), sp(n, n);
  const ComplexMatrix& u = op.eigen.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex sij(0.0, 0.0), spij(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const double ev = op.eigen.eigenvalues[k];
        if (ev <= op.tau_rank) continue;
        const Complex uik_ujk = u(i, k) * std::conj(u(j, k));
        sij += std::sqrt(ev) * uik_ujk;
        spij += (1.0 / std::sqrt(ev)) * uik_ujk;
      }
      s(i, j) = sij;
      sp(i, j) = spij;
    }
  }
  op.sqrt = std::move(s);
  op.sqrt_pinv = std::move(sp);
  return op;
}

Complex a_inner(const Vector& x, const Vector& y, const PositiveOperator& a) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw DimensionMismatch("a_inner: vector dimension mismatch");
  return dot(a.a.apply(x), y);
}

double a_norm(const Vector& x, const PositiveOperator& a) {
  return std::sqrt(std::max(0.0, a_inner(x, x, a).real()));
}

bool is_member(const ComplexMatrix& t, const PositiveOperator& a) {
  if (!t.is_square() || t.dim() != a.dim())
    throw DimensionMismatch("is_member: operator dimension mismatch");
  const double bound = 1e-8 * t.frobenius_norm();
  const std::size_t n = a.dim();
  for (std::size_t c = 0; c < a.kernel_basis.cols(); ++c) {
    Vector k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = a.kernel_basis(i, c);
    if (vec_norm(a.sqrt.apply(t.apply(k))) > bound) return false;
  }
  return true;
}

ReducedOperator reduce(const ComplexMatrix& t, const PositiveOperator& a) {
  if (!is_member(t, a))
    throw NotMember("reduce: operator has no finite A-seminorm (no A^{1/2}-adjoint)");
  return {a.range_basis.adjoint() * (a.sqrt * t * a.sqrt_pinv) * a.range_basis};
}

Vector lift(const Vector& y, const PositiveOperator& a) {
  if (y.size() != a.rank) throw DimensionMismatch("lift: reduced dimension mismatch");
  return a.sqrt_pinv.apply(a.range_basis.apply(y));
}

Vector reduce_vector(const Vector& x, const PositiveOperator& a) {
  if (x.size() != a.dim()) throw DimensionMismatch("reduce_vector: dimension mismatch");
  return a.range_basis.apply_adjoint(a.sqrt.apply(x));
}

}  // namespace semiop
