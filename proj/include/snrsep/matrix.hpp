// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_MATRIX_HPP
#define SNRSEP_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace snrsep {

/// Dense row-major matrix of doubles. Small orders only (channel counts,
/// demixing matrices); signal buffers reuse it as channels x samples.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

bool operator==(const Matrix& a, const Matrix& b);

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double scale, const Matrix& m);

Matrix transpose(const Matrix& m);
double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);

/// Determinant by partial-pivot LU; intended for the small mixing matrices.
double determinant(Matrix m);

/// Stacks matrices with equal column counts on top of each other.
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// A signal buffer: one row per channel, one column per sample.
using SignalMatrix = Matrix;

/// Symmetric matrix; symmetry is enforced on construction and mutation,
/// so the max norm of M - M^T is exactly zero.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t order);

  /// Symmetrizes an arbitrary square matrix as (M + M^T) / 2.
  static SymMatrix from_full(const Matrix& m);

  double operator()(std::size_t i, std::size_t j) const { return full_(i, j); }
  void set(std::size_t i, std::size_t j, double value);

  std::size_t order() const { return full_.rows(); }
  const Matrix& full() const { return full_; }

  double trace() const;

 private:
  Matrix full_;
};

}  // namespace snrsep

#endif  // SNRSEP_MATRIX_HPP
