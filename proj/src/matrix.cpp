/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "semiop/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semiop {

Complex dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("dot: vector sizes differ");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(v[i]) * u[i];
  return s;
}

double vec_norm(const Vector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Vector normalized(const Vector& v) {
  const double n = vec_norm(v);
  if (n == 0.0) return v;
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
  return out;
}

Vector vec_add(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("vec_add: vector sizes differ");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

Vector vec_scale(Complex alpha, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = alpha * v[i];
  return out;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-12;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("from_rows: ragged rows");
    std::size_t j = 0;
    for (const auto& z : row) m(i, j++) = z;
    ++i;
  }
  if (!m.all_finite()) throw SemiopError("from_rows: non-finite entry");
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Vector ComplexMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("apply: size mismatch");
  Vector y(rows_, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex s(0.0, 0.0);
    const Complex* row = a_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector ComplexMatrix::apply_adjoint(const Vector& x) const {
  if (x.size() != rows_) throw DimensionMismatch("apply_adjoint: size mismatch");
  Vector y(cols_, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    const Complex xi = x[i];
    const Complex* row = a_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) y[j] += std::conj(row[j]) * xi;
  }
  return y;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator+: shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator-: shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("operator*: shape mismatch");
  ComplexMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::scaled(Complex alpha) const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = alpha * a_[k];
  return m;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = 0; q < a.cols(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("hermitian_eigen: matrix not square");
  const std::size_t n = m.dim();
  const double scale = std::max(1.0, m.frobenius_norm());
  if ((m - m.adjoint()).frobenius_norm() > 1e-10 * scale)
    throw NotHermitian("hermitian_eigen: matrix is not Hermitian");

  // Work on the Hermitian average; drift in the last bits of the input must
  // not leak into the rotations.
  ComplexMatrix a = (m + m.adjoint()).scaled(0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double tol = 1e-14 * scale;
  const int max_sweeps = 80;
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= tol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        const double ab = std::abs(beta);
        if (ab == 0.0) continue;
        const double phi = std::arg(beta);
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        // Phase-align the pivot, then the classic symmetric rotation:
        // tan(2*theta) relation solved through the stable root.
        const double tau = (gamma - alpha) / (2.0 * ab);
        const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex eip = std::polar(1.0, phi);
        // Unitary on the (p,q) plane: J = [[c*e^{i phi}, s*e^{i phi}], [-s, c]].
        const Complex jpp = c * eip, jpq = s * eip;
        const Complex jqp = Complex(-s, 0.0), jqq = Complex(c, 0.0);

        // Columns: A <- A J, V <- V J.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        // Rows: A <- J* A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > tol)
    throw NoConvergence("hermitian_eigen: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

SvdExtremes svd_extremes(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("svd_extremes: matrix not square");
  if (m.dim() == 0) return {0.0, 0.0};
  const HermitianEigen eig = hermitian_eigen(m.adjoint() * m);
  SvdExtremes out;
  out.sigma_min = std::sqrt(std::max(0.0, eig.eigenvalues.front()));
  out.sigma_max = std::sqrt(std::max(0.0, eig.eigenvalues.back()));
  return out;
}

}  // namespace semiop
