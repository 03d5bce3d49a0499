// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include "snrsep/siggen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace snrsep {

BitVector::BitVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("BitVector: needs at least one bit");
  for (const std::uint8_t b : bits_)
    if (b > 1) throw std::invalid_argument("BitVector: elements must be 0 or 1");
}

BitVector BitVector::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (const char ch : text) {
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("BitVector: expected only '0' and '1' characters");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return BitVector(std::move(bits));
}

BitVector random_bits(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("random_bits: count must be positive");
  std::mt19937_64 engine(seed);
  std::vector<std::uint8_t> bits(count);
  for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(engine() & 1u);
  return BitVector(std::move(bits));
}

void ModulationSpec::validate() const {
  if (samples_per_symbol < 1)
    throw std::invalid_argument("ModulationSpec: samples_per_symbol must be >= 1");
  if (scheme == Modulation::Qpsk && carrier_cycles_per_symbol < 1)
    throw std::invalid_argument("ModulationSpec: QPSK needs carrier_cycles_per_symbol >= 1");
  if (!(amplitude > 0.0)) throw std::invalid_argument("ModulationSpec: amplitude must be positive");
}

SignalMatrix modulate_qpsk(const BitVector& bits, const ModulationSpec& spec) {
  if (spec.scheme != Modulation::Qpsk)
    throw std::invalid_argument("modulate_qpsk: spec.scheme must be QPSK");
  spec.validate();
  if (bits.size() % 2 != 0) throw std::invalid_argument("QPSK requires even bit count");

  const std::size_t symbols = bits.size() / 2;
  const std::size_t sps = spec.samples_per_symbol;
  SignalMatrix out(1, symbols * sps);

  constexpr double pi = std::numbers::pi;
  // Gray map: 00, 01, 11, 10 -> odd multiples of pi/4 around the circle.
  const auto phase_of = [](std::uint8_t b0, std::uint8_t b1) {
    if (b0 == 0 && b1 == 0) return 1.0 * pi / 4.0;
    if (b0 == 0 && b1 == 1) return 3.0 * pi / 4.0;
    if (b0 == 1 && b1 == 1) return 5.0 * pi / 4.0;
    return 7.0 * pi / 4.0;
  };

  const double omega = 2.0 * pi * static_cast<double>(spec.carrier_cycles_per_symbol) /
                       static_cast<double>(sps);
  for (std::size_t m = 0; m < symbols; ++m) {
    const double phase = phase_of(bits[2 * m], bits[2 * m + 1]);
    for (std::size_t k = 0; k < sps; ++k)
      out(0, m * sps + k) = spec.amplitude * std::cos(omega * static_cast<double>(k) + phase);
  }
  return out;
}

SignalMatrix modulate_ook(const BitVector& bits, const ModulationSpec& spec) {
  if (spec.scheme != Modulation::Ook)
    throw std::invalid_argument("modulate_ook: spec.scheme must be OOK");
  spec.validate();

  const std::size_t sps = spec.samples_per_symbol;
  SignalMatrix out(1, bits.size() * sps);
  for (std::size_t m = 0; m < bits.size(); ++m) {
    const double level = bits[m] ? spec.amplitude : 0.0;
    for (std::size_t k = 0; k < sps; ++k) out(0, m * sps + k) = level;
  }
  return out;
}

}  // namespace snrsep
