#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "eyield/bath.hpp"
#include "eyield/network.hpp"
#include "eyield/observables.hpp"
#include "eyield/partition.hpp"
#include "eyield/propagator.hpp"

namespace eyield {

enum class SweepVariable { None, ReorgEnergy, DephasingRate, CorrelationLength };

std::string to_string(SweepVariable v);                  // none, reorg, dephasing, lambda
SweepVariable sweep_variable_from_string(const std::string& s);
std::string sweep_column_name(SweepVariable v);          // CSV header with unit suffix

/// Default horizon for time traces, in ps.
inline constexpr double kTraceHorizon = 5.0;

struct SweepConfig {
  std::filesystem::path network_path;
  std::filesystem::path bath_path;
  std::filesystem::path partition_path;
  std::vector<int> initial_sites;
  SweepVariable variable = SweepVariable::None;
  std::vector<double> values;
  EvolveOptions solver{};
  std::filesystem::path output_dir;
  bool resume = false;
  bool write_trajectory = false;  // time traces only
  std::size_t workers = 0;        // 0: take EYIELD_WORKERS or the hardware thread count
};

/// Files loaded and checked against the sweep settings.
struct ExperimentInputs {
  SiteNetwork network;
  BathSpec bath;
  PairPartition partition;
};

/// Loads the three input files and checks the config against them. Throws
/// ConfigError (or the loader's ValidationError / ParseError).
ExperimentInputs load_inputs(const SweepConfig& cfg);
void validate(const SweepConfig& cfg, const ExperimentInputs& inputs);

/// Bath with the swept field set to `value`.
BathSpec apply_sweep_value(const BathSpec& bath, SweepVariable variable, double value);

struct ResultRow {
  double sweep_value = 0.0;
  int initial_site = 0;
  bool ok = false;
  std::string message;
  double eta = 0.0;
  double eta_oracle = 0.0;
  double phi_total = 0.0;
  std::vector<double> phi_groups;
  double truncation_bound = 0.0;
  int clamped_eigenvalues = 0;
  double most_negative_rate_ratio = 0.0;
  SolverStats stats;
};

/// One sweep point. Failures are captured in the row, never thrown.
ResultRow run_point(const ExperimentInputs& inputs, SweepVariable variable, double value, int initial_site,
                    const EvolveOptions& solver);

std::vector<std::string> result_header(const SweepConfig& cfg, const PairPartition& partition);
std::string format_row(const ResultRow& row, std::size_t n_groups);

struct SweepOutcome {
  std::vector<ResultRow> rows;  // points computed in this run
  std::size_t reused = 0;       // rows carried over by --resume
  std::size_t failed = 0;
  std::filesystem::path results_path;
};

/// Runs every (value, initial site) point on a worker pool and writes
/// results.csv in deterministic order as points complete, plus config.json.
SweepOutcome run_sweep(const SweepConfig& cfg);

/// Writes trace_site<k>.csv (and trajectory_site<k>.csv on request) per
/// initial site. Returns the written paths.
std::vector<std::filesystem::path> run_time_trace(const SweepConfig& cfg);

/// Resolved config with SHA-256 hashes of the input files.
nlohmann::json config_echo(const SweepConfig& cfg, const ExperimentInputs& inputs);
std::string sha256_file(const std::filesystem::path& path);

/// Worker count from EYIELD_WORKERS, else the hardware thread count.
std::size_t default_worker_count();

/// log-spaced grid with `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);
std::vector<double> default_reorg_grid();

struct CrossingResult {
  bool identical = false;
  std::vector<double> crossings;
  std::vector<std::size_t> intervals;  // index i of the bracketing grid interval [x_i, x_{i+1}]
};

/// Sweep values where curves a and b intersect, by linear interpolation of a - b
/// on the grid. Identical curves give identical = true and no crossings.
CrossingResult find_crossings(const std::vector<double>& grid, const std::vector<double>& a,
                              const std::vector<double>& b);

/// Parsed results.csv.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

ResultTable read_result_table(const std::filesystem::path& path);

struct ColumnCrossings {
  std::string column;
  int site_a = 0;
  int site_b = 0;
  std::vector<double> grid;
  CrossingResult result;
};

/// Requires exactly two initial sites sharing a grid, all rows ok.
ColumnCrossings crossing_finder(const ResultTable& table, const std::string& column);

/// Bisection on [lo, hi] for a sign change of f, down to |hi - lo| <= rel_tol * hi.
double bisect_crossing(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-3,
                       int max_iterations = 40);

}  // namespace eyield
