#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "swarmsim/rng.hpp"

namespace swarmsim {

/// Named speed profile shared by a group of agents.
struct AgentClass {
  std::string name;
  double v_max = 1.0;  // length units per step
};

/// One composition entry: how many agents belong to a class.
struct ClassCount {
  AgentClass agent_class;
  int count = 0;
};

enum class SpeedLimitMode {
  kCap,     // scale velocity down to v_max only when it exceeds v_max
  kDivide,  // divide by v_max every step (literal reading, for comparison)
};

enum class FluctuationMode {
  kNormSum,    // sum of fluctuation norms (default, nonnegative)
  kVectorSum,  // norm of the vector sum (degenerate: zero by construction)
};

/// Full simulation configuration. Defaults reproduce the reference setup:
/// a 100 x 100 arena, 50 agents (35 slow at 1.0, 15 fast at 2.6), degree 20,
/// a disc target of radius L/20 moving at 3.0.
struct SimConfig {
  double L = 100.0;  // arena side length
  int N = 50;        // total agent count
  std::vector<ClassCount> composition = {
      {{"slow", 1.0}, 35},
      {{"fast", 2.6}, 15},
  };
  int k = 20;             // neighbor degree
  double omega = 1.0;     // velocity inertial weight
  double c = 0.5;         // velocity social weight
  double a_R_min = 0.375;
  double a_R_max = 1.5;
  double delta = 0.01;    // repulsion adaptation step
  int d = 6;              // repulsion exponent
  double repulsion_gain = 6.0;  // length-scale gain applied to a_R
  double target_speed = 3.0;
  double target_radius = 5.0;
  std::int64_t T_f = 20000;  // horizon in steps
  std::uint64_t seed = 1;
  std::pair<std::int64_t, std::int64_t> heading_hold_range = {50, 200};
  SpeedLimitMode speed_limit_mode = SpeedLimitMode::kCap;
  FluctuationMode fluctuation_mode = FluctuationMode::kNormSum;
  int histogram_bins = 20;
};

/// Disc target state.
struct TargetState {
  Vec2 position = Vec2::Zero();
  Vec2 heading = Vec2::UnitX();  // unit vector
  double speed = 0.0;            // length units per step
  double radius = 1.0;
  std::int64_t heading_hold = 0;  // steps left before a new heading is drawn
};

/// Per-agent view used at interface boundaries; simulation state itself is
/// stored column-wise in SwarmState.
struct AgentState {
  int id = 0;
  int class_id = 0;
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  double repulsion_strength = 0.0;
  int objective = 0;  // -1 on target, 0 otherwise
};

/// Column-per-agent swarm state.
struct SwarmState {
  Eigen::Matrix2Xd positions;   // 2 x N
  Eigen::Matrix2Xd velocities;  // 2 x N
  Eigen::VectorXd repulsion;    // a_R per agent
  Eigen::VectorXi objectives;   // f per agent, in {-1, 0}
  std::vector<int> class_ids;   // index into classes
  std::vector<AgentClass> classes;

  int size() const { return static_cast<int>(positions.cols()); }
  double v_max_of(int i) const { return classes[class_ids[i]].v_max; }
  AgentState agent(int i) const;
};

/// Swarm + target + step counter; the unit the dynamics loop advances.
struct SimState {
  SwarmState swarm;
  TargetState target;
  std::int64_t step_index = 0;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// All violated SimConfig invariants, one message each; empty when valid.
std::vector<std::string> validation_errors(const SimConfig& cfg);

/// Throws ConfigError listing every violated invariant; returns cfg untouched.
const SimConfig& validate(const SimConfig& cfg);

/// Places N agents i.i.d. uniform in the arena with zero velocity and
/// a_R = a_R_max, and the target uniform with a random unit heading.
/// Expects a validated config.
SimState init_swarm(const SimConfig& cfg, RngStream& rng);

/// init_swarm with the stream conventionally keyed from cfg.seed.
SimState init_swarm(const SimConfig& cfg);

/// Parses a JSON config. Keys mirror SimConfig field names exactly;
/// unknown keys are an error. Missing keys keep their defaults.
SimConfig parse_config(const std::string& json_text);

/// Reads and parses a JSON config file. Throws std::system_error when the
/// file cannot be read and ConfigError on malformed content.
SimConfig load_config(const std::filesystem::path& path);

const char* to_string(SpeedLimitMode mode);
const char* to_string(FluctuationMode mode);

}  // namespace swarmsim
