// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include "snrsep/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace snrsep {

double corrcoef(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("corrcoef: lengths differ");
  if (a.size() < 2) throw std::invalid_argument("corrcoef: needs at least two samples");

  const double inv_n = 1.0 / static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a *= inv_n;
  mean_b *= inv_n;

  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (!(var_a > 0.0) || !(var_b > 0.0))
    throw std::runtime_error("undefined correlation for constant signal");
  return cov / (std::sqrt(var_a) * std::sqrt(var_b));
}

AlignmentReport align(const SignalMatrix& sources, const SignalMatrix& outputs) {
  if (sources.rows() != outputs.rows())
    throw std::invalid_argument("align: channel counts differ");
  if (sources.cols() != outputs.cols()) throw std::invalid_argument("align: lengths differ");
  const std::size_t n = sources.rows();
  if (n > 8) throw std::invalid_argument("align: exhaustive matching supports at most 8 channels");

  AlignmentReport report;
  report.corr_matrix = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      report.corr_matrix(i, j) = corrcoef(sources.row(i), outputs.row(j));

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = perm;
  double best_score = -1.0;
  do {
    double score = 0.0;
    for (std::size_t i = 0; i < n; ++i) score += std::abs(report.corr_matrix(i, perm[i]));
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  report.assignment = best;
  report.per_source_corr.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    report.per_source_corr[i] = std::abs(report.corr_matrix(i, best[i]));
  report.mean_corr = std::accumulate(report.per_source_corr.begin(),
                                     report.per_source_corr.end(), 0.0) /
                     static_cast<double>(n);
  return report;
}

}  // namespace snrsep
