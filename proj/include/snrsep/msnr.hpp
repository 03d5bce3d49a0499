// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_MSNR_HPP
#define SNRSEP_MSNR_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "snrsep/matrix.hpp"

namespace snrsep {

/// Moving-average window length. L = 1 would make the smoothed signal equal
/// to the input and the contrast undefined, so L >= 2 is required.
struct MovingAverageSpec {
  explicit MovingAverageSpec(std::size_t length);
  std::size_t length;
};

/// Causal moving average with a shrinking start-up window: output sample n
/// averages the last min(L, n+1) input samples. Shape is preserved, and a
/// constant channel stays constant (no zero-padding transient).
SignalMatrix moving_average(const SignalMatrix& x, MovingAverageSpec spec);

/// Second-moment matrices of the contrast: C = x*x^T / N and
/// Cbar = (xbar - x)*(xbar - x)^T / N with xbar = moving_average(x, L).
/// Both are Gram matrices, hence positive semidefinite.
std::pair<SymMatrix, SymMatrix> correlation_matrices(const SignalMatrix& x,
                                                     MovingAverageSpec spec);

/// Per-row contrast in dB: f_i = 10*log10((w_i C w_i^T) / (w_i Cbar w_i^T)).
/// Scale-invariant in each row.
std::vector<double> objective(const Matrix& w, const SymMatrix& c, const SymMatrix& cbar);

/// Analytic gradient of objective(): row i is
/// (20/ln 10) * (C w_i / V_i - Cbar w_i / U_i)^T with V_i = w_i C w_i^T and
/// U_i = w_i Cbar w_i^T. Vanishes exactly at generalized eigenvectors.
Matrix objective_gradient(const Matrix& w, const SymMatrix& c, const SymMatrix& cbar);

/// Closed-form demixing estimate. Row i of `w` is the i-th generalized
/// eigenvector of (C, Cbar), normalized to unit Euclidean length, ordered by
/// descending eigenvalue; objective_db[i] = 10*log10(eigenvalues[i]).
struct DemixingSolution {
  Matrix w;
  std::vector<double> eigenvalues;
  std::size_t ma_length = 0;
  std::vector<double> objective_db;
};

/// Builds (C, Cbar) from the mixture and solves the generalized eigenproblem
/// in one shot. Needs n_samples >= max(L, 10 * n_channels). A singular Cbar
/// gets one ridge retry (eps = 1e-10 * trace/n) before erroring.
DemixingSolution solve_demixing(const SignalMatrix& x, MovingAverageSpec spec);

/// y = W * x.
SignalMatrix apply_demixing(const Matrix& w, const SignalMatrix& x);

}  // namespace snrsep

#endif  // SNRSEP_MSNR_HPP
