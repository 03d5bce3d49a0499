// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_SIGGEN_HPP
#define SNRSEP_SIGGEN_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "snrsep/matrix.hpp"

namespace snrsep {

/// Non-empty sequence of 0/1 values.
class BitVector {
 public:
  explicit BitVector(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1' characters; anything else is rejected.
  static BitVector parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Deterministic bits for a given seed: the low bit of successive
/// mt19937_64 outputs.
BitVector random_bits(std::size_t count, std::uint64_t seed);

enum class Modulation { Qpsk, Ook };

struct ModulationSpec {
  Modulation scheme = Modulation::Ook;
  std::size_t samples_per_symbol = 1;
  /// QPSK only; an integer cycle count keeps symbol boundaries
  /// phase-continuous.
  std::size_t carrier_cycles_per_symbol = 0;
  double amplitude = 1.0;

  void validate() const;
};

/// Real passband QPSK: bit pairs select the carrier phase via the Gray map
/// 00 -> pi/4, 01 -> 3pi/4, 11 -> 5pi/4, 10 -> 7pi/4. Sample k of symbol m
/// is amplitude * cos(2*pi*cycles*k/sps + phase_m). One output channel,
/// (bits/2) * sps samples.
SignalMatrix modulate_qpsk(const BitVector& bits, const ModulationSpec& spec);

/// Baseband unipolar NRZ: each bit is held for sps samples at
/// amplitude * bit. One output channel.
SignalMatrix modulate_ook(const BitVector& bits, const ModulationSpec& spec);

}  // namespace snrsep

#endif  // SNRSEP_SIGGEN_HPP
