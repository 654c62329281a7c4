#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqham/era.hpp"
#include "sqham/generators.hpp"

namespace sqham {

struct ExperimentConfig {
  HostSpec host;
  /// Empty means the host's own order.
  std::vector<std::size_t> ns;
  std::vector<double> Ks;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  EdgeMode mode = EdgeMode::restricted;
  std::size_t max_rotations_per_round = 0;
  bool debug_validate = false;
  /// Writes one trace file per trial into this directory.
  std::optional<std::filesystem::path> trace_dir;
  /// Off by default so reruns stay byte-identical; the column then holds 0.
  bool record_wall_time = false;
};

/// Throws std::invalid_argument naming the first offending cell.
void validate_config(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t n = 0;
  double alpha_declared = 0.0;
  double K = 0.0;
  std::uint64_t seed = 0;
  bool success = false;
  std::string failure_reason;
  std::size_t rounds = 0;
  std::size_t realized_x = 0;
  std::size_t pi_min_degree = 0;
  bool gamma2_connected = false;
  double wall_time_ms = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Trial seed: splitmix64 chained over (master, n, bits of K, trial index).
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, double K, std::size_t trial);

/// Independent stream derived from a trial seed (0: host, 1: ERA).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Everything a trial samples, rebuilt from its seed. Used by run_trial and
/// by trace replay.
struct TrialInstance {
  Host host;
  EraConfig era;
};

TrialInstance prepare_trial(const HostSpec& spec, std::size_t n, std::uint64_t seed,
                            const ExperimentConfig& cfg);

TrialRecord run_trial(const HostSpec& spec, std::size_t n, double K, std::size_t trial_index,
                      const ExperimentConfig& cfg);

/// Runs every (n, K, trial) cell, `workers` trials at a time, and returns
/// records in (n, K, trial) order. Streams them to `csv` when given.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, std::ostream* csv = nullptr);

inline constexpr const char* kCsvVersionLine = "# sqham-trials v1";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const TrialRecord& r);
/// Throws std::runtime_error("line N: ...") on malformed rows.
std::vector<TrialRecord> read_csv(std::istream& in);

struct CellKey {
  std::size_t n = 0;
  double alpha = 0.0;
  double K = 0.0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellSummary {
  CellKey cell;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_rounds = 0.0;
  double gamma2_connectivity_rate = 0.0;
};

struct Summary {
  std::vector<CellSummary> cells;
  std::vector<std::string> warnings;
};

/// Aggregates records per cell in first-appearance order. Cells listed in
/// `expected` with no records are skipped with a warning.
Summary summarize(const std::vector<TrialRecord>& records,
                  const std::vector<CellKey>& expected = {});

void write_summary(std::ostream& out, const Summary& summary);

/// One-sided Fisher exact p-value for "rate of group B is below rate of
/// group A": P(S_A >= observed | both margins).
double fisher_decrease_pvalue(std::size_t successes_a, std::size_t trials_a,
                              std::size_t successes_b, std::size_t trials_b);

}  // namespace sqham
