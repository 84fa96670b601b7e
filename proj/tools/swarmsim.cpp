#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/experiment.hpp"
#include "swarmsim/model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

namespace fs = std::filesystem;
using namespace swarmsim;

fs::path default_out_dir() {
  if (const char* env = std::getenv("SWARMSIM_OUT")) return fs::path(env);
  return fs::path(".");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw std::system_error(ec, "cannot create output directory '" +
                                    dir.string() + "'");
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::system_error(errno, std::generic_category(),
                            "cannot write '" + path.string() + "'");
  return out;
}

struct Overrides {
  std::optional<int> k;
  std::optional<int> fast;
  std::optional<double> target_speed;
  std::optional<std::int64_t> steps;
  std::optional<std::uint64_t> seed;

  void apply(SimConfig& cfg) const {
    if (k) cfg.k = *k;
    if (fast) set_fast_count(cfg, *fast);
    if (target_speed) cfg.target_speed = *target_speed;
    if (steps) cfg.T_f = *steps;
    if (seed) cfg.seed = *seed;
  }
};

int cmd_run(const fs::path& config_path, const Overrides& overrides,
            const fs::path& out_dir) {
  SimConfig cfg = load_config(config_path);
  overrides.apply(cfg);
  validate(cfg);
  ensure_dir(out_dir);

  const RunSummary summary = run_simulation(cfg);

  const fs::path csv_path = out_dir / "run_summary.csv";
  {
    auto out = open_out(csv_path);
    write_summary_csv(out, {&summary, 1});
  }
  const fs::path hist_path = out_dir / "run_histogram.json";
  {
    auto out = open_out(hist_path);
    write_histogram_json(out, summary.phi_histogram);
  }

  std::cout << summary.run_id << ": time_on_target="
            << format_double(summary.time_on_target)
            << " xi=" << format_double(summary.xi) << " steps=" << cfg.T_f
            << "\nwrote " << csv_path.string() << "\nwrote "
            << hist_path.string() << "\n";
  return kExitOk;
}

void print_cell_table(const std::vector<RunSummary>& runs) {
  std::cout << std::left << std::setw(16) << "cell" << std::right
            << std::setw(12) << "tot_mean" << std::setw(12) << "tot_min"
            << std::setw(12) << "tot_max" << std::setw(12) << "xi_mean"
            << std::setw(12) << "xi_min" << std::setw(12) << "xi_max" << "\n";
  for (const auto& stats : aggregate_by_cell(runs)) {
    std::cout << std::left << std::setw(16) << cell_label(stats.cell)
              << std::right << std::fixed << std::setprecision(5)
              << std::setw(12) << stats.tot_mean << std::setw(12)
              << stats.tot_min << std::setw(12) << stats.tot_max
              << std::setw(12) << stats.xi_mean << std::setw(12)
              << stats.xi_min << std::setw(12) << stats.xi_max << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
}

int cmd_sweep(const std::string& preset_or_path, const fs::path& out_dir,
              int jobs, bool full) {
  SweepSpec spec;
  std::string name;
  const bool is_path = preset_or_path.ends_with(".json") ||
                       fs::exists(preset_or_path);
  if (is_path) {
    spec = load_sweep(preset_or_path);
    name = fs::path(preset_or_path).stem().string();
  } else {
    spec = figure_configs(preset_or_path);
    name = preset_or_path;
  }
  if (full) {
    spec.steps = 100000;
    spec.seed_indices = {0, 1, 2, 3, 4};
  }
  ensure_dir(out_dir);

  const std::vector<RunSummary> runs = run_sweep(spec, jobs);

  const fs::path csv_path = out_dir / (name + "_runs.csv");
  {
    auto out = open_out(csv_path);
    write_summary_csv(out, runs);
  }
  for (const auto& run : runs) {
    auto out = open_out(out_dir / (name + "_" + run.run_id + "_hist.json"));
    write_histogram_json(out, run.phi_histogram);
  }

  print_cell_table(runs);
  std::cout << runs.size() << " runs written to " << csv_path.string()
            << "\n";
  return kExitOk;
}

int cmd_trace(const fs::path& config_path, const Overrides& overrides,
              const fs::path& out_path, std::int64_t stride) {
  if (stride < 1) throw ConfigError("trace stride must be at least 1");
  SimConfig cfg = load_config(config_path);
  overrides.apply(cfg);
  validate(cfg);

  if (out_path.has_parent_path()) ensure_dir(out_path.parent_path());
  auto out = open_out(out_path);
  out << "step,kind,id,class,x,y,a_R\n";

  const auto snapshot = [&](const SimState& state) {
    const SwarmState& swarm = state.swarm;
    for (int i = 0; i < swarm.size(); ++i) {
      out << state.step_index << ",agent," << i << ','
          << swarm.classes[swarm.class_ids[i]].name << ','
          << format_double(swarm.positions(0, i)) << ','
          << format_double(swarm.positions(1, i)) << ','
          << format_double(swarm.repulsion(i)) << '\n';
    }
    out << state.step_index << ",target,-1,-,"
        << format_double(state.target.position.x()) << ','
        << format_double(state.target.position.y()) << ",0\n";
  };

  SimState state = init_swarm(cfg);
  for (std::int64_t t = 1; t <= cfg.T_f; ++t) {
    step(state, cfg);
    if (t % stride == 0) snapshot(state);
  }
  std::cout << "wrote " << out_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm target search-and-tracking simulator"};
  app.require_subcommand(1);

  fs::path config_path;
  fs::path out_dir = default_out_dir();
  fs::path trace_out = "trace.csv";
  Overrides overrides;
  std::string preset_or_path;
  int jobs = 1;
  bool full = false;
  std::int64_t stride = 100;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--k", overrides.k, "override neighbor degree");
    cmd->add_option("--fast", overrides.fast, "override fast-agent count");
    cmd->add_option("--target-speed", overrides.target_speed,
                    "override target speed");
    cmd->add_option("--steps", overrides.steps, "override horizon T_f");
    cmd->add_option("--seed", overrides.seed, "override RNG seed");
  };

  CLI::App* run = app.add_subcommand("run", "run one simulation");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "output directory");
  add_overrides(run);

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("preset", preset_or_path,
                    "figure preset name or sweep spec JSON path")
      ->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--jobs", jobs, "number of worker threads");
  sweep->add_flag("--full", full,
                  "full-scale runs: 100000 steps and 5 seeds per cell");

  CLI::App* trace = app.add_subcommand("trace", "dump trajectory snapshots");
  trace->add_option("--config", config_path, "JSON config file")->required();
  trace->add_option("--out", trace_out, "output CSV path");
  trace->add_option("--stride", stride, "steps between snapshots");
  add_overrides(trace);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, overrides, out_dir);
    if (sweep->parsed()) return cmd_sweep(preset_or_path, out_dir, jobs, full);
    if (trace->parsed())
      return cmd_trace(config_path, overrides, trace_out, stride);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
