// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_SEEDING_HPP
#define SNRSEP_SEEDING_HPP

#include <cstdint>

namespace snrsep {

/// splitmix64 finalizer. Full-avalanche 64-bit mix used everywhere a seed
/// has to be derived from another seed.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed from (base, salt). Chaining calls with
/// distinct salts yields decorrelated streams; the same (base, salt) always
/// maps to the same child, so enlarging an experiment grid never changes
/// the seeds of cells that were already present.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return mix64(base ^ mix64(salt));
}

}  // namespace snrsep

#endif  // SNRSEP_SEEDING_HPP
