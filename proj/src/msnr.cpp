// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include "snrsep/msnr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "snrsep/linalg.hpp"

namespace snrsep {

namespace {

// d(10*log10 r)/dr expanded: 10/ln10 per log, times 2 from the quadratic
// forms.
const double kGradientScale = 20.0 / std::log(10.0);

std::vector<double> sym_times_vector(const SymMatrix& m, std::span<const double> v) {
  const std::size_t n = m.order();
  std::vector<double> out(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) out[r] += m(r, k) * v[k];
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void check_shapes(const Matrix& w, const SymMatrix& c, const SymMatrix& cbar) {
  if (c.order() != cbar.order())
    throw std::invalid_argument("objective: C and Cbar orders differ");
  if (w.cols() != c.order())
    throw std::invalid_argument("objective: W column count does not match matrix order");
}

}  // namespace

MovingAverageSpec::MovingAverageSpec(std::size_t length_in) : length(length_in) {
  if (length < 2) throw std::invalid_argument("MovingAverageSpec: length must be >= 2");
}

SignalMatrix moving_average(const SignalMatrix& x, MovingAverageSpec spec) {
  const std::size_t n_samples = x.cols();
  if (spec.length > n_samples)
    throw std::invalid_argument("moving_average: window length exceeds sample count");

  SignalMatrix out(x.rows(), n_samples);
  std::vector<double> prefix(n_samples + 1, 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t t = 0; t < n_samples; ++t) prefix[t + 1] = prefix[t] + x(i, t);
    for (std::size_t t = 0; t < n_samples; ++t) {
      const std::size_t window = std::min(spec.length, t + 1);
      out(i, t) = (prefix[t + 1] - prefix[t + 1 - window]) / static_cast<double>(window);
    }
  }
  return out;
}

std::pair<SymMatrix, SymMatrix> correlation_matrices(const SignalMatrix& x,
                                                     MovingAverageSpec spec) {
  const SignalMatrix smoothed = moving_average(x, spec);
  const std::size_t n = x.rows();
  const double inv_samples = 1.0 / static_cast<double>(x.cols());

  SymMatrix c(n);
  SymMatrix cbar(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc_c = 0.0;
      double acc_cbar = 0.0;
      for (std::size_t t = 0; t < x.cols(); ++t) {
        acc_c += x(i, t) * x(j, t);
        acc_cbar += (smoothed(i, t) - x(i, t)) * (smoothed(j, t) - x(j, t));
      }
      c.set(i, j, acc_c * inv_samples);
      cbar.set(i, j, acc_cbar * inv_samples);
    }
  }
  return {c, cbar};
}

std::vector<double> objective(const Matrix& w, const SymMatrix& c, const SymMatrix& cbar) {
  check_shapes(w, c, cbar);
  std::vector<double> out(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    const double v = dot(row, sym_times_vector(c, row));
    const double u = dot(row, sym_times_vector(cbar, row));
    if (!(u > 0.0))
      throw std::runtime_error("degenerate denominator for row " + std::to_string(i));
    out[i] = 10.0 * std::log10(v / u);
  }
  return out;
}

Matrix objective_gradient(const Matrix& w, const SymMatrix& c, const SymMatrix& cbar) {
  check_shapes(w, c, cbar);
  Matrix grad(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    const std::vector<double> cw = sym_times_vector(c, row);
    const std::vector<double> cbarw = sym_times_vector(cbar, row);
    const double v = dot(row, cw);
    const double u = dot(row, cbarw);
    if (!(u > 0.0))
      throw std::runtime_error("degenerate denominator for row " + std::to_string(i));
    for (std::size_t k = 0; k < w.cols(); ++k)
      grad(i, k) = kGradientScale * (cw[k] / v - cbarw[k] / u);
  }
  return grad;
}

DemixingSolution solve_demixing(const SignalMatrix& x, MovingAverageSpec spec) {
  const std::size_t n = x.rows();
  if (x.cols() < std::max(spec.length, 10 * n))
    throw std::invalid_argument("solve_demixing: needs at least max(L, 10*n_channels) samples");

  auto [c, cbar] = correlation_matrices(x, spec);

  GenEigenResult pairs;
  try {
    pairs = generalized_eigen(c, cbar);
  } catch (const NotPositiveDefiniteError&) {
    // Ridge retry rescues borderline-degenerate windows.
    const double ridge = 1e-10 * cbar.trace() / static_cast<double>(n);
    SymMatrix regularized = cbar;
    for (std::size_t i = 0; i < n; ++i) regularized.set(i, i, cbar(i, i) + ridge);
    try {
      pairs = generalized_eigen(c, regularized);
    } catch (const NotPositiveDefiniteError&) {
      throw std::runtime_error(
          "signals too smooth or L degenerate: averaged-difference covariance is singular");
    }
  }

  DemixingSolution solution;
  solution.ma_length = spec.length;
  solution.eigenvalues = pairs.eigenvalues;
  solution.w = pairs.eigenvectors;
  // Unit-length rows: the contrast is row-scale invariant, and a fixed
  // normalization makes W independent of the overall scale of (C, Cbar).
  for (std::size_t i = 0; i < n; ++i) {
    auto row = solution.w.row(i);
    double norm = std::sqrt(dot(row, row));
    if (norm > 0.0)
      for (double& v : row) v /= norm;
  }
  solution.objective_db.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    solution.objective_db[i] = 10.0 * std::log10(solution.eigenvalues[i]);
  return solution;
}

SignalMatrix apply_demixing(const Matrix& w, const SignalMatrix& x) {
  if (w.rows() != w.cols()) throw std::invalid_argument("apply_demixing: W must be square");
  if (w.cols() != x.rows())
    throw std::invalid_argument("apply_demixing: W order does not match channel count");
  return w * x;
}

}  // namespace snrsep
