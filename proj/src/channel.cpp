// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include "snrsep/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "snrsep/linalg.hpp"
#include "snrsep/seeding.hpp"

namespace snrsep {

namespace {

double channel_power(const SignalMatrix& s, std::size_t channel) {
  double acc = 0.0;
  for (const double v : s.row(channel)) acc += v * v;
  return acc / static_cast<double>(s.cols());
}

}  // namespace

std::optional<std::string> ChannelSpec::singularity_warning() const {
  if (mixing.rows() != mixing.cols()) return "mixing matrix is not square";
  double hadamard = 1.0;
  for (std::size_t r = 0; r < mixing.rows(); ++r) {
    double norm_sq = 0.0;
    for (const double v : mixing.row(r)) norm_sq += v * v;
    hadamard *= std::sqrt(norm_sq);
  }
  const double det = std::abs(determinant(mixing));
  if (det <= 1e-12 * hadamard)
    return "mixing matrix is numerically singular (|det| = " + std::to_string(det) +
           "); sources will not be separable";
  return std::nullopt;
}

SignalMatrix add_awgn(const SignalMatrix& s, std::optional<double> snr_db, std::uint64_t seed) {
  // +inf dB is accepted as an equivalent spelling of "noise disabled".
  if (!snr_db.has_value() || (std::isinf(*snr_db) && *snr_db > 0.0)) return s;

  const std::size_t n = s.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (!(channel_power(s, i) > 0.0))
      throw std::runtime_error("cannot scale noise to an all-zero signal (channel " +
                               std::to_string(i) + ")");

  SignalMatrix out = s;
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Channel-major draw order keeps the stream layout documented and stable.
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = std::sqrt(channel_power(s, i) * std::pow(10.0, -*snr_db / 10.0));
    for (std::size_t t = 0; t < s.cols(); ++t) out(i, t) += sigma * gauss(engine);
  }
  return out;
}

SignalMatrix mix(const ChannelSpec& spec, const SignalMatrix& s) {
  if (spec.mixing.rows() != spec.mixing.cols())
    throw std::invalid_argument("mix: mixing matrix must be square");
  if (spec.mixing.cols() != s.rows())
    throw std::invalid_argument("mix: mixing matrix order does not match channel count");
  return spec.mixing * add_awgn(s, spec.snr_db, spec.seed);
}

Matrix random_mixing_matrix(std::size_t n, std::uint64_t seed, double max_condition) {
  if (n == 0) throw std::invalid_argument("random_mixing_matrix: n must be positive");
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  constexpr int kMaxDraws = 1000;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = uniform(engine);

    // cond_2(A) = sqrt(lambda_max / lambda_min) of A^T A.
    const EigenResult gram = sym_eigen(SymMatrix::from_full(transpose(a) * a));
    const double lo = gram.eigenvalues.back();
    if (lo <= 0.0) continue;
    if (std::sqrt(gram.eigenvalues.front() / lo) <= max_condition) return a;
  }
  throw std::runtime_error("random_mixing_matrix: no acceptable draw after 1000 attempts");
}

}  // namespace snrsep
