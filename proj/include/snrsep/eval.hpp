// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_EVAL_HPP
#define SNRSEP_EVAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "snrsep/matrix.hpp"

namespace snrsep {

/// Pearson correlation coefficient with mean-removed sample covariances.
/// Requires equal lengths >= 2 and nonzero variance on both sides.
double corrcoef(std::span<const double> a, std::span<const double> b);

/// How well a set of separated outputs matches the original sources once
/// the permutation and sign ambiguity is resolved.
struct AlignmentReport {
  /// corr_matrix(i, j) = corrcoef(source i, output j).
  Matrix corr_matrix;
  /// assignment[i] is the output matched to source i.
  std::vector<std::size_t> assignment;
  /// |corr_matrix(i, assignment[i])| per source.
  std::vector<double> per_source_corr;
  double mean_corr = 0.0;
};

/// Exhaustive search over output permutations (n <= 8) maximizing the total
/// absolute matched correlation. Absolute values absorb the sign ambiguity.
AlignmentReport align(const SignalMatrix& sources, const SignalMatrix& outputs);

}  // namespace snrsep

#endif  // SNRSEP_EVAL_HPP
