// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include "snrsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace snrsep {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-12;

// Solves L * X = B for X, L lower triangular.
Matrix forward_solve(const Matrix& l, const Matrix& b) {
  const std::size_t n = l.rows();
  Matrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      double acc = b(r, c);
      for (std::size_t k = 0; k < r; ++k) acc -= l(r, k) * x(k, c);
      x(r, c) = acc / l(r, r);
    }
  }
  return x;
}

// Solves L^T * x = b for one right-hand side.
std::vector<double> backward_solve(const Matrix& l, const std::vector<double>& b) {
  const std::size_t n = l.rows();
  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t k = ri + 1; k < n; ++k) acc -= l(k, ri) * x[k];
    x[ri] = acc / l(ri, ri);
  }
  return x;
}

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Flips the vector so that its largest-magnitude component is positive;
// the lowest index wins a magnitude tie.
void normalize_sign(std::span<double> v) {
  std::size_t lead = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
  if (v[lead] < 0.0)
    for (double& x : v) x = -x;
}

}  // namespace

NotPositiveDefiniteError::NotPositiveDefiniteError(std::size_t pivot)
    : std::runtime_error("matrix not positive definite (pivot " + std::to_string(pivot) + ")"),
      pivot_index_(pivot) {}

Matrix cholesky(const SymMatrix& m) {
  const std::size_t n = m.order();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0)) throw NotPositiveDefiniteError(j);
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = m(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / l(j, j);
    }
  }
  return l;
}

EigenResult sym_eigen(const SymMatrix& m) {
  const std::size_t n = m.order();
  Matrix a = m.full();
  Matrix v = Matrix::identity(n);
  const double scale = frobenius_norm(a);
  const double threshold = kJacobiTolerance * scale;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Classic Jacobi rotation zeroing a(p,q).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(p, k) = a(k, p);
          a(k, q) = s * akp + c * akq;
          a(q, k) = a(k, q);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable: exactly degenerate eigenvalues keep the Jacobi output order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    result.eigenvalues[i] = a(order[i], order[i]);
    for (std::size_t k = 0; k < n; ++k) result.eigenvectors(i, k) = v(k, order[i]);
    normalize_sign(result.eigenvectors.row(i));
  }
  return result;
}

GenEigenResult generalized_eigen(const SymMatrix& c, const SymMatrix& cbar) {
  if (c.order() != cbar.order())
    throw std::invalid_argument("generalized_eigen: orders differ");
  const std::size_t n = c.order();
  const Matrix l = cholesky(cbar);

  // B = L^-1 * C * L^-T, kept symmetric before the Jacobi stage.
  const Matrix y = forward_solve(l, c.full());
  const Matrix b = forward_solve(l, transpose(y));
  const EigenResult std_eigen = sym_eigen(SymMatrix::from_full(b));

  GenEigenResult result;
  result.eigenvalues = std_eigen.eigenvalues;
  result.eigenvectors = Matrix(n, n);
  result.residual_norms.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = std_eigen.eigenvectors(i, k);
    const std::vector<double> vi = backward_solve(l, u);
    for (std::size_t k = 0; k < n; ++k) result.eigenvectors(i, k) = vi[k];
    normalize_sign(result.eigenvectors.row(i));
  }

  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double cv = 0.0;
      double cbv = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        cv += c(r, k) * result.eigenvectors(i, k);
        cbv += cbar(r, k) * result.eigenvectors(i, k);
      }
      const double res = cv - result.eigenvalues[i] * cbv;
      sq += res * res;
    }
    result.residual_norms[i] = std::sqrt(sq);
  }
  return result;
}

}  // namespace snrsep
