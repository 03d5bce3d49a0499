// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include "snrsep/harness.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "snrsep/seeding.hpp"

namespace snrsep {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Sub-stream salts hung off a trial or demo seed.
constexpr std::uint64_t kNoiseSalt = 1;
constexpr std::uint64_t kMixingSalt = 2;
constexpr std::uint64_t kSourceBitsSalt = 100;  // + source index

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double snr_sort_key(const std::optional<double>& snr) {
  return snr ? *snr : std::numeric_limits<double>::infinity();
}

std::string status_slug(const std::string& message) {
  std::string slug;
  for (const char ch : message) {
    if (std::isalnum(static_cast<unsigned char>(ch)))
      slug.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    else if (!slug.empty() && slug.back() != '-')
      slug.push_back('-');
    if (slug.size() >= 48) break;
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  return slug.empty() ? "error" : slug;
}

}  // namespace

// ---------------------------------------------------------------------------
// Signal CSV

void store_signals(const SignalMatrix& x, const fs::path& path) {
  if (x.rows() == 0 || x.cols() == 0)
    throw std::invalid_argument("store_signals: signal matrix is empty");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());

  for (std::size_t i = 0; i < x.rows(); ++i) out << (i ? "," : "") << "ch" << i;
  out << '\n';
  for (std::size_t t = 0; t < x.cols(); ++t) {
    for (std::size_t i = 0; i < x.rows(); ++i) out << (i ? "," : "") << format_double(x(i, t));
    out << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SignalMatrix load_signals(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.size() < 2) throw std::runtime_error(path.string() + ": no samples");

  const std::vector<std::string> header = split_fields(lines[0]);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] != "ch" + std::to_string(i))
      throw std::runtime_error(path.string() + ": line 1: expected header 'ch0,ch1,...', got '" +
                               lines[0] + "'");
  const std::size_t n = header.size();

  SignalMatrix x(n, lines.size() - 1);
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const std::string line_label = path.string() + ": line " + std::to_string(row + 1);
    const std::vector<std::string> fields = split_fields(lines[row]);
    if (fields.size() != n)
      throw std::runtime_error(line_label + ": expected " + std::to_string(n) +
                               " columns, got " + std::to_string(fields.size()));
    for (std::size_t i = 0; i < n; ++i) {
      double value = 0.0;
      const char* first = fields[i].data();
      const char* last = first + fields[i].size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last)
        throw std::runtime_error(line_label + ": invalid number '" + fields[i] + "'");
      x(i, row - 1) = value;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Demo

const char* const kDemoQpskBits = "00011010010111101001";
const char* const kDemoOokBits = "00000001100110001010";

Matrix demo_mixing_matrix() {
  Matrix a(2, 2);
  a(0, 0) = 0.4684;
  a(0, 1) = 0.1952;
  a(1, 0) = 0.7384;
  a(1, 1) = 0.5483;
  return a;
}

ModulationSpec demo_qpsk_spec() { return {Modulation::Qpsk, 200, 4, 1.0}; }
ModulationSpec demo_ook_spec() { return {Modulation::Ook, 100, 0, 1.0}; }

namespace {

void write_report_csv(const AlignmentReport& report, const DemixingSolution& solution,
                      const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  const std::size_t n = report.per_source_corr.size();

  out << "mean_corr";
  for (std::size_t i = 0; i < n; ++i) out << ",corr_" << i;
  for (std::size_t i = 0; i < n; ++i) out << ",assign_" << i;
  out << ",eig_gap\n";

  out << format_double(report.mean_corr);
  for (std::size_t i = 0; i < n; ++i) out << ',' << format_double(report.per_source_corr[i]);
  for (std::size_t i = 0; i < n; ++i) out << ',' << report.assignment[i];
  out << ',';
  if (solution.eigenvalues.size() >= 2)
    out << format_double(solution.eigenvalues[0] / solution.eigenvalues[1]);
  out << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

DemoResult run_demo(const DemoConfig& config) {
  DemoResult result;
  const SignalMatrix qpsk = modulate_qpsk(BitVector::parse(kDemoQpskBits), demo_qpsk_spec());
  const SignalMatrix ook = modulate_ook(BitVector::parse(kDemoOokBits), demo_ook_spec());
  result.sources = vstack(qpsk, ook);

  const ChannelSpec channel{demo_mixing_matrix(), config.snr_db,
                            derive_seed(config.seed, kNoiseSalt)};
  if (const auto warning = channel.singularity_warning()) result.warnings.push_back(*warning);

  result.mixed = mix(channel, result.sources);
  result.solution = solve_demixing(result.mixed, MovingAverageSpec(config.ma_length));
  result.separated = apply_demixing(result.solution.w, result.mixed);
  result.report = align(result.sources, result.separated);

  fs::create_directories(config.out_dir);
  store_signals(result.sources, config.out_dir / "sources.csv");
  store_signals(result.mixed, config.out_dir / "mixed.csv");
  store_signals(result.separated, config.out_dir / "separated.csv");
  write_report_csv(result.report, result.solution, config.out_dir / "report.csv");
  return result;
}

// ---------------------------------------------------------------------------
// Sweep

std::size_t SourceSpec::bit_count() const {
  return fixed_bits ? fixed_bits->size() : random_bit_count;
}

std::size_t SourceSpec::sample_count() const {
  const std::size_t symbols =
      modulation.scheme == Modulation::Qpsk ? bit_count() / 2 : bit_count();
  return symbols * modulation.samples_per_symbol;
}

void SweepSpec::validate_and_sort() {
  if (ma_lengths.empty()) throw std::invalid_argument("sweep: ma_lengths must not be empty");
  if (snr_db_values.empty()) throw std::invalid_argument("sweep: snr_db must not be empty");
  if (trials_per_cell < 1) throw std::invalid_argument("sweep: trials_per_cell must be >= 1");
  if (sources.empty()) throw std::invalid_argument("sweep: sources must not be empty");

  for (const SourceSpec& src : sources) {
    src.modulation.validate();
    if (src.bit_count() == 0) throw std::invalid_argument("sweep: source needs at least one bit");
    if (src.modulation.scheme == Modulation::Qpsk && src.bit_count() % 2 != 0)
      throw std::invalid_argument("sweep: QPSK source needs an even bit count");
  }

  const std::size_t samples = sources.front().sample_count();
  for (const SourceSpec& src : sources)
    if (src.sample_count() != samples)
      throw std::invalid_argument("sweep: sources must produce equal sample counts");

  for (const std::size_t len : ma_lengths)
    if (len < 2 || len > samples)
      throw std::invalid_argument("sweep: ma_lengths must lie in [2, n_samples]");

  if (mixing && (mixing->rows() != sources.size() || mixing->cols() != sources.size()))
    throw std::invalid_argument("sweep: mixing matrix order must equal the source count");

  std::sort(ma_lengths.begin(), ma_lengths.end());
  std::stable_sort(snr_db_values.begin(), snr_db_values.end(),
                   [](const std::optional<double>& a, const std::optional<double>& b) {
                     return snr_sort_key(a) < snr_sort_key(b);
                   });
}

std::size_t SweepSpec::sample_count() const { return sources.front().sample_count(); }

std::uint64_t sweep_cell_seed(std::uint64_t base_seed, std::size_t ma_length,
                              std::optional<double> snr_db, std::size_t trial) {
  std::uint64_t seed = derive_seed(base_seed, static_cast<std::uint64_t>(ma_length));
  seed = derive_seed(seed, std::bit_cast<std::uint64_t>(snr_sort_key(snr_db)));
  return derive_seed(seed, static_cast<std::uint64_t>(trial));
}

namespace {

SweepRecord run_sweep_cell(const SweepSpec& spec, std::size_t ma_length,
                           std::optional<double> snr_db, std::size_t trial) {
  SweepRecord record;
  record.ma_length = ma_length;
  record.snr_db = snr_db;
  record.trial = trial;
  record.seed = sweep_cell_seed(spec.base_seed, ma_length, snr_db, trial);

  try {
    SignalMatrix sources;
    for (std::size_t i = 0; i < spec.sources.size(); ++i) {
      const SourceSpec& src = spec.sources[i];
      const BitVector bits =
          src.fixed_bits ? *src.fixed_bits
                         : random_bits(src.random_bit_count,
                                       derive_seed(record.seed, kSourceBitsSalt + i));
      const SignalMatrix channel = src.modulation.scheme == Modulation::Qpsk
                                       ? modulate_qpsk(bits, src.modulation)
                                       : modulate_ook(bits, src.modulation);
      sources = i == 0 ? channel : vstack(sources, channel);
    }

    const Matrix mixing =
        spec.mixing ? *spec.mixing
                    : random_mixing_matrix(spec.sources.size(),
                                           derive_seed(record.seed, kMixingSalt));
    const ChannelSpec channel{mixing, snr_db, derive_seed(record.seed, kNoiseSalt)};
    const SignalMatrix mixed = mix(channel, sources);

    const DemixingSolution solution = solve_demixing(mixed, MovingAverageSpec(ma_length));
    const SignalMatrix separated = apply_demixing(solution.w, mixed);
    const AlignmentReport report = align(sources, separated);

    record.mean_corr = report.mean_corr;
    record.per_source_corr = report.per_source_corr;
    if (solution.eigenvalues.size() >= 2)
      record.eig_gap = solution.eigenvalues[0] / solution.eigenvalues[1];
    record.status = "ok";
  } catch (const std::exception& error) {
    record.mean_corr.reset();
    record.per_source_corr.clear();
    record.eig_gap.reset();
    record.status = status_slug(error.what());
  }
  return record;
}

void write_sweep_row(std::ostream& out, const SweepRecord& record, std::size_t n_sources) {
  out << record.ma_length << ',' << format_double(snr_sort_key(record.snr_db)) << ','
      << record.trial << ',' << record.seed << ',';
  if (record.mean_corr) out << format_double(*record.mean_corr);
  for (std::size_t i = 0; i < n_sources; ++i) {
    out << ',';
    if (i < record.per_source_corr.size()) out << format_double(record.per_source_corr[i]);
  }
  out << ',';
  if (record.eig_gap) out << format_double(*record.eig_gap);
  out << ',' << record.status << '\n';
}

}  // namespace

std::vector<SweepRecord> run_sweep(SweepSpec spec, const fs::path& out_path) {
  spec.validate_and_sort();
  const std::size_t n = spec.sources.size();

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path.string());
  out << "L,snr_db,trial,seed,mean_corr";
  for (std::size_t i = 0; i < n; ++i) out << ",corr_" << i;
  out << ",eig_gap,status\n";

  std::vector<SweepRecord> records;
  records.reserve(spec.ma_lengths.size() * spec.snr_db_values.size() * spec.trials_per_cell);
  for (const std::size_t ma_length : spec.ma_lengths) {
    for (const std::optional<double>& snr_db : spec.snr_db_values) {
      for (std::size_t trial = 0; trial < spec.trials_per_cell; ++trial) {
        records.push_back(run_sweep_cell(spec, ma_length, snr_db, trial));
        write_sweep_row(out, records.back(), n);
      }
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + out_path.string());
  return records;
}

// ---------------------------------------------------------------------------
// Sweep config JSON

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw std::runtime_error("sweep config: " + message);
}

void check_keys(const json& object, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* key) { return item.key() == key; }))
      config_error("unknown key '" + item.key() + "' in " + where);
  }
}

SourceSpec parse_source(const json& j, std::size_t index) {
  const std::string where = "sources[" + std::to_string(index) + "]";
  if (!j.is_object()) config_error(where + " must be an object");
  check_keys(j,
             {"modulation", "samples_per_symbol", "carrier_cycles_per_symbol", "amplitude",
              "bits", "random_bits"},
             where);

  SourceSpec src;
  if (!j.contains("modulation")) config_error(where + " needs 'modulation'");
  const std::string scheme = j.at("modulation").get<std::string>();
  if (scheme == "qpsk")
    src.modulation.scheme = Modulation::Qpsk;
  else if (scheme == "ook")
    src.modulation.scheme = Modulation::Ook;
  else
    config_error(where + ": modulation must be 'qpsk' or 'ook'");

  if (!j.contains("samples_per_symbol")) config_error(where + " needs 'samples_per_symbol'");
  src.modulation.samples_per_symbol = j.at("samples_per_symbol").get<std::size_t>();
  src.modulation.carrier_cycles_per_symbol =
      j.value("carrier_cycles_per_symbol", src.modulation.scheme == Modulation::Qpsk ? 4u : 0u);
  src.modulation.amplitude = j.value("amplitude", 1.0);

  const bool has_bits = j.contains("bits");
  const bool has_random = j.contains("random_bits");
  if (has_bits == has_random)
    config_error(where + " needs exactly one of 'bits' or 'random_bits'");
  if (has_bits)
    src.fixed_bits = BitVector::parse(j.at("bits").get<std::string>());
  else
    src.random_bit_count = j.at("random_bits").get<std::size_t>();
  return src;
}

}  // namespace

SweepSpec load_sweep_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sweep config: " + path.string());

  json j;
  try {
    in >> j;
  } catch (const json::exception& error) {
    config_error(error.what());
  }
  if (!j.is_object()) config_error("top level must be an object");
  check_keys(j, {"ma_lengths", "snr_db", "trials_per_cell", "base_seed", "sources", "mixing"},
             "top level");

  SweepSpec spec;
  try {
    if (!j.contains("ma_lengths")) config_error("missing 'ma_lengths'");
    for (const auto& v : j.at("ma_lengths")) spec.ma_lengths.push_back(v.get<std::size_t>());

    if (!j.contains("snr_db")) config_error("missing 'snr_db'");
    for (const auto& v : j.at("snr_db")) {
      if (v.is_null())
        spec.snr_db_values.push_back(std::nullopt);
      else
        spec.snr_db_values.push_back(v.get<double>());
    }

    spec.trials_per_cell = j.value("trials_per_cell", std::size_t{1});
    spec.base_seed = j.value("base_seed", std::uint64_t{0});

    if (!j.contains("sources")) config_error("missing 'sources'");
    std::size_t index = 0;
    for (const auto& v : j.at("sources")) spec.sources.push_back(parse_source(v, index++));

    if (!j.contains("mixing")) config_error("missing 'mixing'");
    const json& mixing = j.at("mixing");
    if (mixing.is_string() && mixing.get<std::string>() == "random") {
      spec.mixing = std::nullopt;
    } else if (mixing.is_array()) {
      const std::size_t n = mixing.size();
      Matrix a(n, n == 0 ? 0 : mixing.at(0).size());
      for (std::size_t r = 0; r < n; ++r) {
        const auto& row = mixing.at(r);
        if (row.size() != a.cols()) config_error("mixing rows have unequal lengths");
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = row.at(c).get<double>();
      }
      spec.mixing = a;
    } else {
      config_error("'mixing' must be a matrix (array of rows) or the string \"random\"");
    }
  } catch (const json::exception& error) {
    config_error(error.what());
  }

  spec.validate_and_sort();
  return spec;
}

}  // namespace snrsep
