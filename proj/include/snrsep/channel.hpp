// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_CHANNEL_HPP
#define SNRSEP_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "snrsep/matrix.hpp"

namespace snrsep {

/// Noisy linear mixing channel: x = A * (s + v). Noise is injected per
/// source channel before mixing. snr_db == nullopt disables noise entirely,
/// which keeps noiseless runs exact.
struct ChannelSpec {
  Matrix mixing;
  std::optional<double> snr_db = 30.0;
  std::uint64_t seed = 0;

  /// Separability needs an invertible mixing matrix. Returns a warning
  /// message when |det A| <= 1e-12 times the Hadamard bound; nullopt when
  /// the matrix looks fine.
  std::optional<std::string> singularity_warning() const;
};

/// Adds zero-mean white Gaussian noise per channel. Channel i gets variance
/// P_i / 10^(snr_db/10) where P_i is the channel's mean square; nullopt
/// returns the input unchanged. Deterministic for a fixed seed.
SignalMatrix add_awgn(const SignalMatrix& s, std::optional<double> snr_db, std::uint64_t seed);

/// x = A * (s + v) with v from add_awgn under the spec's SNR and seed.
SignalMatrix mix(const ChannelSpec& spec, const SignalMatrix& s);

/// Random mixing matrix with i.i.d. uniform(0,1) entries, redrawn until the
/// 2-norm condition number is at most max_condition (near-singular draws
/// are not separable and would pollute sweep statistics).
Matrix random_mixing_matrix(std::size_t n, std::uint64_t seed, double max_condition = 100.0);

}  // namespace snrsep

#endif  // SNRSEP_CHANNEL_HPP
