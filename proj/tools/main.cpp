// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

// Command-line front end for the max-SNR source-separation toolkit.
//
//   snrsep gen       render a bit string through a modulator to CSV
//   snrsep demo      end-to-end two-source separation with fixed bit patterns
//   snrsep separate  demix an arbitrary recorded mixture CSV
//   snrsep sweep     grid experiment over window length and noise level
//
// Exit codes: 0 success, 1 usage / argument error, 2 data or algorithm error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snrsep/eval.hpp"
#include "snrsep/harness.hpp"
#include "snrsep/msnr.hpp"
#include "snrsep/siggen.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct GenOptions {
  std::string bits;
  std::size_t random_count = 0;
  bool random_set = false;
  std::string modulation = "qpsk";
  std::size_t samples_per_symbol = 0;
  std::size_t carrier_cycles = 0;
  bool carrier_cycles_set = false;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenOptions& opt) {
  snrsep::ModulationSpec spec;
  if (opt.modulation == "qpsk")
    spec.scheme = snrsep::Modulation::Qpsk;
  else if (opt.modulation == "ook")
    spec.scheme = snrsep::Modulation::Ook;
  else {
    std::cerr << "error: --modulation must be 'qpsk' or 'ook'\n";
    return kExitUsage;
  }
  if (!opt.random_set && opt.bits.empty()) {
    std::cerr << "error: one of --bits or --random is required\n";
    return kExitUsage;
  }
  spec.samples_per_symbol = opt.samples_per_symbol;
  spec.carrier_cycles_per_symbol =
      opt.carrier_cycles_set ? opt.carrier_cycles
                             : (spec.scheme == snrsep::Modulation::Qpsk ? 4 : 0);
  spec.amplitude = opt.amplitude;

  const snrsep::BitVector bits = opt.random_set
                                     ? snrsep::random_bits(opt.random_count, opt.seed)
                                     : snrsep::BitVector::parse(opt.bits);
  const snrsep::SignalMatrix signal = spec.scheme == snrsep::Modulation::Qpsk
                                          ? snrsep::modulate_qpsk(bits, spec)
                                          : snrsep::modulate_ook(bits, spec);
  snrsep::store_signals(signal, opt.out);
  std::cout << "wrote " << signal.cols() << " samples to " << opt.out << '\n';
  return 0;
}

struct DemoOptions {
  std::uint64_t seed = 0;
  double snr_db = 30.0;
  bool no_noise = false;
  std::size_t ma_length = 7;
  std::string out_dir = ".";
};

int run_demo_command(const DemoOptions& opt) {
  snrsep::DemoConfig config;
  config.seed = opt.seed;
  config.snr_db = opt.no_noise ? std::nullopt : std::optional<double>(opt.snr_db);
  config.ma_length = opt.ma_length;
  config.out_dir = opt.out_dir;

  const snrsep::DemoResult result = snrsep::run_demo(config);
  for (const std::string& warning : result.warnings) std::cerr << "warning: " << warning << '\n';

  std::cout << "mean |corr| " << format_double(result.report.mean_corr);
  for (std::size_t i = 0; i < result.report.per_source_corr.size(); ++i)
    std::cout << (i ? ", " : "  (") << "source " << i << ": "
              << format_double(result.report.per_source_corr[i]);
  std::cout << ")\n";
  std::cout << "eigenvalues";
  for (const double lambda : result.solution.eigenvalues)
    std::cout << ' ' << format_double(lambda);
  std::cout << '\n';
  std::cout << "outputs in " << opt.out_dir << ": sources.csv mixed.csv separated.csv report.csv\n";
  return 0;
}

struct SeparateOptions {
  std::string input;
  std::size_t ma_length = 7;
  std::string output;
  std::string report;
  std::string sources;
};

int run_separate(const SeparateOptions& opt) {
  if (!opt.report.empty() && opt.sources.empty()) {
    std::cerr << "error: --report requires --sources for reference signals\n";
    return kExitUsage;
  }
  const snrsep::SignalMatrix mixed = snrsep::load_signals(opt.input);
  const snrsep::DemixingSolution solution =
      snrsep::solve_demixing(mixed, snrsep::MovingAverageSpec(opt.ma_length));
  const snrsep::SignalMatrix separated = snrsep::apply_demixing(solution.w, mixed);
  snrsep::store_signals(separated, opt.output);

  std::cout << "eigenvalues";
  for (const double lambda : solution.eigenvalues) std::cout << ' ' << format_double(lambda);
  std::cout << '\n';

  if (!opt.sources.empty()) {
    const snrsep::SignalMatrix sources = snrsep::load_signals(opt.sources);
    const snrsep::AlignmentReport report = snrsep::align(sources, separated);
    std::cout << "mean |corr| " << format_double(report.mean_corr) << '\n';
    if (!opt.report.empty()) {
      std::ofstream out(opt.report);
      if (!out) throw std::runtime_error("cannot open for writing: " + opt.report);
      out << "mean_corr";
      for (std::size_t i = 0; i < report.per_source_corr.size(); ++i) out << ",corr_" << i;
      out << '\n' << format_double(report.mean_corr);
      for (const double c : report.per_source_corr) out << ',' << format_double(c);
      out << '\n';
    }
  }
  return 0;
}

struct SweepOptions {
  std::string config;
  std::string out;
};

int run_sweep_command(const SweepOptions& opt) {
  const snrsep::SweepSpec spec = snrsep::load_sweep_spec(opt.config);
  const std::vector<snrsep::SweepRecord> records = snrsep::run_sweep(spec, opt.out);
  std::size_t failed = 0;
  for (const snrsep::SweepRecord& record : records) failed += record.status != "ok";
  std::cout << records.size() << " cells written to " << opt.out;
  if (failed) std::cout << " (" << failed << " failed; see status column)";
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-SNR blind source separation toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "modulate a bit string to a signal CSV");
  CLI::Option* bits_opt = gen_cmd->add_option("--bits", gen.bits, "bit string, e.g. 0110");
  CLI::Option* random_opt =
      gen_cmd->add_option("--random", gen.random_count, "draw this many random bits")
          ->each([&gen](const std::string&) { gen.random_set = true; });
  bits_opt->excludes(random_opt);
  gen_cmd->add_option("--modulation", gen.modulation, "qpsk or ook")->required();
  gen_cmd->add_option("--sps", gen.samples_per_symbol, "samples per symbol")->required();
  gen_cmd->add_option("--cycles", gen.carrier_cycles, "carrier cycles per symbol (QPSK)")
      ->each([&gen](const std::string&) { gen.carrier_cycles_set = true; });
  gen_cmd->add_option("--amp", gen.amplitude, "peak amplitude (default 1)");
  gen_cmd->add_option("--seed", gen.seed, "seed for --random (default 0)");
  gen_cmd->add_option("--out", gen.out, "output CSV path")->required();

  DemoOptions demo;
  CLI::App* demo_cmd = app.add_subcommand("demo", "two-source QPSK+OOK separation demo");
  demo_cmd->add_option("--seed", demo.seed, "noise seed (default 0)");
  CLI::Option* snr_opt = demo_cmd->add_option("--snr-db", demo.snr_db, "per-source SNR in dB (default 30)");
  CLI::Option* no_noise_opt = demo_cmd->add_flag("--no-noise", demo.no_noise, "disable noise injection");
  snr_opt->excludes(no_noise_opt);
  demo_cmd->add_option("--ma-len", demo.ma_length, "moving-average window length (default 7)");
  demo_cmd->add_option("--out-dir", demo.out_dir, "output directory (default .)");

  SeparateOptions sep;
  CLI::App* sep_cmd = app.add_subcommand("separate", "demix a recorded mixture CSV");
  sep_cmd->add_option("--input", sep.input, "mixture CSV")->required();
  sep_cmd->add_option("--ma-len", sep.ma_length, "moving-average window length (default 7)");
  sep_cmd->add_option("--output", sep.output, "separated-signal CSV path")->required();
  sep_cmd->add_option("--report", sep.report, "write a correlation report CSV here");
  sep_cmd->add_option("--sources", sep.sources, "reference sources CSV for scoring");

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid experiment over L and SNR");
  sweep_cmd->add_option("--config", sweep.config, "JSON sweep configuration")->required();
  sweep_cmd->add_option("--out", sweep.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    // CLI11's own exit codes are library-specific; collapse every parse
    // failure (and --help, which returns 0) onto the documented contract.
    const int code = app.exit(error);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (demo_cmd->parsed()) return run_demo_command(demo);
    if (sep_cmd->parsed()) return run_separate(sep);
    if (sweep_cmd->parsed()) return run_sweep_command(sweep);
    std::cerr << "error: no subcommand selected\n";
    return kExitUsage;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitData;
  }
}
