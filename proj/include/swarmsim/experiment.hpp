#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swarmsim/metrics.hpp"
#include "swarmsim/model.hpp"

namespace swarmsim {

/// One point of the sweep grid.
struct SweepCell {
  int k = 0;
  int n_fast = 0;
  double target_speed = 0.0;

  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

/// Sweep definition: a base config plus axis values. Cells are the cross
/// product k_values x fast_counts x target_speeds; each cell runs once per
/// seed index with a per-run seed derived from (base seed, cell, seed index).
struct SweepSpec {
  SimConfig base;
  std::vector<int> k_values;
  std::vector<int> fast_counts;
  std::vector<double> target_speeds;
  std::vector<int> seed_indices;
  std::int64_t steps = 20000;
};

/// Metrics of one completed run.
struct RunSummary {
  std::string run_id;
  SweepCell cell;
  std::uint64_t run_seed = 0;
  double xi = 0.0;
  double time_on_target = 0.0;
  Histogram phi_histogram;
  double wall_seconds = 0.0;  // informational only, never written to files
};

/// Seed-aggregated statistics of one cell.
struct CellStats {
  SweepCell cell;
  int runs = 0;
  double tot_mean = 0.0, tot_min = 0.0, tot_max = 0.0;
  double xi_mean = 0.0, xi_min = 0.0, xi_max = 0.0;
};

/// Count of agents in the class named "fast" (0 when absent).
int fast_count(const SimConfig& cfg);

/// Re-balances a slow/fast composition: the "fast" class gets n_fast agents
/// and the "slow" class absorbs the remainder. Throws ConfigError when the
/// config lacks those two classes.
void set_fast_count(SimConfig& cfg, int n_fast);

/// Runs one full simulation of cfg.T_f steps, feeding the metrics
/// accumulator every step. Identical seed and config give an identical
/// summary.
RunSummary run_simulation(const SimConfig& cfg);

/// All violated sweep invariants (empty axes, invalid cells), one per entry.
std::vector<std::string> sweep_validation_errors(const SweepSpec& spec);

/// Executes every (cell, seed) run, optionally on `parallelism` threads.
/// Output order is canonical (cells in grid order, then seed index) and
/// independent of the execution schedule. Throws ConfigError before any run
/// starts if the spec or any cell is invalid.
std::vector<RunSummary> run_sweep(const SweepSpec& spec, int parallelism = 1);

/// Preset sweeps matching the reference experiment grids.
SweepSpec figure_configs(const std::string& name);
const std::vector<std::string>& figure_preset_names();

/// Parses a sweep spec JSON document (keys: base, k_values, fast_counts,
/// target_speeds, seeds, steps).
SweepSpec parse_sweep(const std::string& json_text);
SweepSpec load_sweep(const std::filesystem::path& path);

CellStats aggregate_cell(std::span<const RunSummary> runs,
                         const SweepCell& cell);
std::vector<CellStats> aggregate_by_cell(std::span<const RunSummary> runs);

/// "k20_f15_v3"-style label used in run ids and output file names.
std::string cell_label(const SweepCell& cell);

/// Fixed-order CSV (columns: run_id,k,n_fast,target_speed,seed,xi,
/// time_on_target), full double precision, one row per run.
void write_summary_csv(std::ostream& os, std::span<const RunSummary> runs);

/// Histogram JSON object: {"bin_edges": [...], "weights": [...]}.
void write_histogram_json(std::ostream& os, const Histogram& hist);

/// Deterministic full-precision decimal rendering used in all file output.
std::string format_double(double value);

}  // namespace swarmsim
