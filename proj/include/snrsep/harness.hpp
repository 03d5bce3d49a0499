// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#ifndef SNRSEP_HARNESS_HPP
#define SNRSEP_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "snrsep/channel.hpp"
#include "snrsep/eval.hpp"
#include "snrsep/matrix.hpp"
#include "snrsep/msnr.hpp"
#include "snrsep/siggen.hpp"

namespace snrsep {

// ---------------------------------------------------------------------------
// Signal CSV files: header "ch0,ch1,...", one sample per row, 17 significant
// digits so a store/load round trip is exact.

void store_signals(const SignalMatrix& x, const std::filesystem::path& path);
SignalMatrix load_signals(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Built-in demo: two stock bit patterns, QPSK + OOK at 2000 samples, mixed
// by a fixed 2x2 matrix. The OOK pattern is 19 reference bits padded with a
// trailing zero so both channels span exactly 2000 samples.

extern const char* const kDemoQpskBits;  // 20 bits
extern const char* const kDemoOokBits;   // 20 bits (trailing pad bit)
Matrix demo_mixing_matrix();             // fixed 2x2
ModulationSpec demo_qpsk_spec();         // 200 samples/symbol, 4 carrier cycles
ModulationSpec demo_ook_spec();          // 100 samples/symbol

struct DemoConfig {
  std::uint64_t seed = 0;
  std::optional<double> snr_db = 30.0;  // nullopt = noise disabled
  std::size_t ma_length = 7;
  std::filesystem::path out_dir;
};

struct DemoResult {
  SignalMatrix sources;
  SignalMatrix mixed;
  SignalMatrix separated;
  DemixingSolution solution;
  AlignmentReport report;
  std::vector<std::string> warnings;
};

/// Runs generate -> mix -> solve -> apply -> align and writes sources.csv,
/// mixed.csv, separated.csv and report.csv into out_dir (created if
/// missing). Byte-deterministic for a fixed config.
DemoResult run_demo(const DemoConfig& config);

// ---------------------------------------------------------------------------
// Parameter sweep over (moving-average length, SNR) cells.

/// One source channel of the sweep. Bits are either fixed or redrawn per
/// trial from the trial seed.
struct SourceSpec {
  ModulationSpec modulation;
  std::optional<BitVector> fixed_bits;
  std::size_t random_bit_count = 0;  // used when fixed_bits is empty

  std::size_t sample_count() const;
  std::size_t bit_count() const;
};

struct SweepSpec {
  std::vector<std::size_t> ma_lengths;
  std::vector<std::optional<double>> snr_db_values;  // nullopt = noise disabled
  std::size_t trials_per_cell = 1;
  std::uint64_t base_seed = 0;
  std::vector<SourceSpec> sources;
  std::optional<Matrix> mixing;  // nullopt = random matrix per trial

  /// Throws std::invalid_argument on an inconsistent grid; sorts the grid
  /// lists into the output order (ascending L, ascending SNR with
  /// noise-disabled last).
  void validate_and_sort();
  std::size_t sample_count() const;
};

/// Parses the JSON config (see README for the schema).
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepRecord {
  std::size_t ma_length = 0;
  std::optional<double> snr_db;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> mean_corr;
  std::vector<double> per_source_corr;  // empty when the cell failed
  std::optional<double> eig_gap;        // lambda_1 / lambda_2
  std::string status;                   // "ok" or an error slug
};

/// Seed of one sweep cell: base_seed chained through the window length, the
/// SNR value's bit pattern (+inf for noise-disabled) and the trial index.
/// Cells therefore keep their seeds when the grid is extended.
std::uint64_t sweep_cell_seed(std::uint64_t base_seed, std::size_t ma_length,
                              std::optional<double> snr_db, std::size_t trial);

/// Runs every (L, snr, trial) cell, writes one CSV row per cell to out_path
/// (header: L,snr_db,trial,seed,mean_corr,corr_0,...,eig_gap,status) and
/// returns the records in file order. Cell failures become status rows, not
/// exceptions; only I/O trouble throws.
std::vector<SweepRecord> run_sweep(SweepSpec spec, const std::filesystem::path& out_path);

}  // namespace snrsep

#endif  // SNRSEP_HARNESS_HPP
