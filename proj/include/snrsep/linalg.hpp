// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_LINALG_HPP
#define SNRSEP_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "snrsep/matrix.hpp"

namespace snrsep {

/// Thrown by cholesky() when a pivot is not strictly positive.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  explicit NotPositiveDefiniteError(std::size_t pivot);
  std::size_t pivot_index() const { return pivot_index_; }

 private:
  std::size_t pivot_index_;
};

/// Cholesky factor L (lower triangular) with L * L^T = m.
Matrix cholesky(const SymMatrix& m);

/// Eigenpairs of a symmetric matrix. Row i of `eigenvectors` goes with
/// eigenvalues[i]; values are sorted descending and the vectors are
/// orthonormal. Sign convention: the largest-magnitude component of each
/// vector is positive (lowest index wins a tie).
struct EigenResult {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius norm
/// drops below 1e-12 * ||m||_F, hard cap 100 sweeps.
EigenResult sym_eigen(const SymMatrix& m);

/// Solution of c * v_i = lambda_i * cbar * v_i for a symmetric-definite
/// pair. Vectors are cbar-orthonormal (v_i^T * cbar * v_j = delta_ij) and
/// follow the sym_eigen sign convention. residual_norms[i] is
/// ||c*v_i - lambda_i*cbar*v_i||_2.
struct GenEigenResult {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  std::vector<double> residual_norms;
};

/// Requires cbar symmetric positive definite; c only symmetric. Reduces to
/// a standard symmetric problem through the Cholesky factor of cbar.
GenEigenResult generalized_eigen(const SymMatrix& c, const SymMatrix& cbar);

}  // namespace snrsep

#endif  // SNRSEP_LINALG_HPP
