#include "swarmsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <thread>

#include <nlohmann/json.hpp>

#include "swarmsim/dynamics.hpp"

namespace swarmsim {

using nlohmann::json;

int fast_count(const SimConfig& cfg) {
  for (const auto& entry : cfg.composition)
    if (entry.agent_class.name == "fast") return entry.count;
  return 0;
}

void set_fast_count(SimConfig& cfg, int n_fast) {
  ClassCount* fast = nullptr;
  ClassCount* slow = nullptr;
  int others = 0;
  for (auto& entry : cfg.composition) {
    if (entry.agent_class.name == "fast") fast = &entry;
    else if (entry.agent_class.name == "slow") slow = &entry;
    else others += entry.count;
  }
  if (!fast || !slow)
    throw ConfigError(
        "fast-count adjustment requires classes named 'fast' and 'slow'");
  fast->count = n_fast;
  slow->count = cfg.N - n_fast - others;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string format_compact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

}  // namespace

std::string cell_label(const SweepCell& cell) {
  std::ostringstream os;
  os << "k" << cell.k << "_f" << cell.n_fast << "_v"
     << format_compact(cell.target_speed);
  return os.str();
}

RunSummary run_simulation(const SimConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  SimState state = init_swarm(cfg);
  MetricsAccumulator acc(cfg.N, cfg.histogram_bins, cfg.fluctuation_mode);

  Eigen::Matrix2Xd positions_t(2, cfg.N);
  for (std::int64_t t = 0; t < cfg.T_f; ++t) {
    positions_t = state.swarm.positions;
    const TargetState target_t = state.target;
    step(state, cfg);
    acc.add_step(positions_t, state.swarm.velocities, target_t);
  }

  RunSummary summary;
  summary.cell = {cfg.k, fast_count(cfg), cfg.target_speed};
  summary.run_id = cell_label(summary.cell);
  summary.run_seed = cfg.seed;
  summary.xi = acc.xi(avg_max_speed(cfg.composition));
  summary.time_on_target = acc.time_on_target();
  summary.phi_histogram = acc.histogram();
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return summary;
}

namespace {

SimConfig cell_config(const SweepSpec& spec, const SweepCell& cell,
                      std::size_t cell_index, std::size_t seed_index_pos) {
  SimConfig cfg = spec.base;
  cfg.k = cell.k;
  set_fast_count(cfg, cell.n_fast);
  cfg.target_speed = cell.target_speed;
  cfg.T_f = spec.steps;
  cfg.seed = derive_seed(
      spec.base.seed, cell_index,
      static_cast<std::uint64_t>(spec.seed_indices[seed_index_pos]));
  return cfg;
}

std::vector<SweepCell> grid_cells(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  cells.reserve(spec.k_values.size() * spec.fast_counts.size() *
                spec.target_speeds.size());
  for (int k : spec.k_values)
    for (int f : spec.fast_counts)
      for (double v : spec.target_speeds) cells.push_back({k, f, v});
  return cells;
}

}  // namespace

std::vector<std::string> sweep_validation_errors(const SweepSpec& spec) {
  std::vector<std::string> errors;
  if (spec.k_values.empty()) errors.push_back("k_values axis is empty");
  if (spec.fast_counts.empty()) errors.push_back("fast_counts axis is empty");
  if (spec.target_speeds.empty())
    errors.push_back("target_speeds axis is empty");
  if (spec.seed_indices.empty()) errors.push_back("seed list is empty");
  for (int s : spec.seed_indices)
    if (s < 0) {
      errors.push_back("seed indices must be nonnegative");
      break;
    }
  if (spec.steps < 1) errors.push_back("steps-per-run must be at least 1");
  if (!errors.empty()) return errors;

  const auto cells = grid_cells(spec);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    SimConfig cfg = spec.base;
    cfg.k = cells[c].k;
    cfg.target_speed = cells[c].target_speed;
    cfg.T_f = spec.steps;
    try {
      set_fast_count(cfg, cells[c].n_fast);
    } catch (const ConfigError& e) {
      errors.push_back(e.what());
      break;
    }
    for (const auto& msg : validation_errors(cfg))
      errors.push_back("cell " + cell_label(cells[c]) + ": " + msg);
  }
  return errors;
}

std::vector<RunSummary> run_sweep(const SweepSpec& spec, int parallelism) {
  const auto errors = sweep_validation_errors(spec);
  if (!errors.empty()) {
    std::string msg = "invalid sweep:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

  const auto cells = grid_cells(spec);
  struct Job {
    std::size_t cell_index;
    std::size_t seed_pos;
  };
  std::vector<Job> jobs;
  jobs.reserve(cells.size() * spec.seed_indices.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t s = 0; s < spec.seed_indices.size(); ++s)
      jobs.push_back({c, s});

  std::vector<RunSummary> results(jobs.size());
  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const SimConfig cfg =
        cell_config(spec, cells[job.cell_index], job.cell_index, job.seed_pos);
    RunSummary summary = run_simulation(cfg);
    summary.run_id = cell_label(cells[job.cell_index]) + "_s" +
                     std::to_string(spec.seed_indices[job.seed_pos]);
    results[j] = std::move(summary);
  };

  const int workers = std::clamp(
      parallelism, 1,
      static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  if (workers <= 1 || jobs.size() <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t j = next.fetch_add(1); j < jobs.size();
             j = next.fetch_add(1))
          run_job(j);
      });
    for (auto& t : pool) t.join();
  }
  return results;
}

const std::vector<std::string>& figure_preset_names() {
  static const std::vector<std::string> names = {"fig3", "fig4", "fig5",
                                                 "fig7", "fig8"};
  return names;
}

SweepSpec figure_configs(const std::string& name) {
  SweepSpec spec;
  spec.seed_indices = {0, 1, 2};
  spec.steps = 20000;

  const std::vector<int> k_grid = {5, 10, 15, 18, 20, 25, 30, 35, 40, 45, 49};
  if (name == "fig3") {
    spec.k_values = {20, 40};
    spec.fast_counts = {0, 15};
    spec.target_speeds = {3.0, 5.0};
  } else if (name == "fig4" || name == "fig7") {
    spec.k_values = {20};
    spec.fast_counts = {0, 5, 15, 25, 50};
    spec.target_speeds = {3.0};
  } else if (name == "fig5" || name == "fig8") {
    spec.k_values = k_grid;
    spec.fast_counts = {15};
    spec.target_speeds = {3.0};
  } else {
    std::string msg = "unknown figure preset '" + name + "'; valid presets:";
    for (const auto& n : figure_preset_names()) msg += " " + n;
    throw ConfigError(msg);
  }
  return spec;
}

SweepSpec parse_sweep(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("sweep spec root must be an object");

  SweepSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "base") spec.base = parse_config(value.dump());
      else if (key == "k_values")
        spec.k_values = value.get<std::vector<int>>();
      else if (key == "fast_counts")
        spec.fast_counts = value.get<std::vector<int>>();
      else if (key == "target_speeds")
        spec.target_speeds = value.get<std::vector<double>>();
      else if (key == "seeds")
        spec.seed_indices = value.get<std::vector<int>>();
      else if (key == "steps")
        spec.steps = value.get<std::int64_t>();
      else
        throw ConfigError("unknown sweep spec key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep spec value error: ") + e.what());
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::system_error(errno, std::generic_category(),
                            "cannot open sweep spec '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep(buf.str());
}

CellStats aggregate_cell(std::span<const RunSummary> runs,
                         const SweepCell& cell) {
  CellStats stats;
  stats.cell = cell;
  for (const auto& run : runs) {
    if (!(run.cell == cell)) continue;
    if (stats.runs == 0) {
      stats.tot_mean = stats.tot_min = stats.tot_max = run.time_on_target;
      stats.xi_mean = stats.xi_min = stats.xi_max = run.xi;
    } else {
      stats.tot_mean += run.time_on_target;
      stats.tot_min = std::min(stats.tot_min, run.time_on_target);
      stats.tot_max = std::max(stats.tot_max, run.time_on_target);
      stats.xi_mean += run.xi;
      stats.xi_min = std::min(stats.xi_min, run.xi);
      stats.xi_max = std::max(stats.xi_max, run.xi);
    }
    ++stats.runs;
  }
  if (stats.runs > 0) {
    stats.tot_mean /= stats.runs;
    stats.xi_mean /= stats.runs;
  }
  return stats;
}

std::vector<CellStats> aggregate_by_cell(std::span<const RunSummary> runs) {
  std::vector<SweepCell> seen;
  std::vector<CellStats> out;
  for (const auto& run : runs) {
    if (std::find(seen.begin(), seen.end(), run.cell) != seen.end()) continue;
    seen.push_back(run.cell);
    out.push_back(aggregate_cell(runs, run.cell));
  }
  return out;
}

void write_summary_csv(std::ostream& os, std::span<const RunSummary> runs) {
  os << "run_id,k,n_fast,target_speed,seed,xi,time_on_target\n";
  for (const auto& run : runs) {
    os << run.run_id << ',' << run.cell.k << ',' << run.cell.n_fast << ','
       << format_double(run.cell.target_speed) << ',' << run.run_seed << ','
       << format_double(run.xi) << ',' << format_double(run.time_on_target)
       << '\n';
  }
}

void write_histogram_json(std::ostream& os, const Histogram& hist) {
  json j;
  j["bin_edges"] = hist.edges;
  j["weights"] = hist.weights;
  os << j.dump(2) << '\n';
}

}  // namespace swarmsim
