#include "swarmsim/model.hpp"

#include <cerrno>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "swarmsim/target.hpp"

namespace swarmsim {

using nlohmann::json;

AgentState SwarmState::agent(int i) const {
  return AgentState{i,
                    class_ids[i],
                    positions.col(i),
                    velocities.col(i),
                    repulsion(i),
                    objectives(i)};
}

std::vector<std::string> validation_errors(const SimConfig& cfg) {
  std::vector<std::string> errors;
  auto fail = [&errors](const std::string& msg) { errors.push_back(msg); };

  if (!(cfg.L > 0.0)) fail("arena side L must be positive");
  if (cfg.N < 3) fail("agent count N must be at least 3");

  if (cfg.k < 2 || cfg.k > cfg.N - 1) {
    std::ostringstream os;
    os << "degree k out of range: k=" << cfg.k << ", required 2 <= k <= N-1="
       << cfg.N - 1;
    fail(os.str());
  }

  if (cfg.composition.empty()) {
    fail("composition must list at least one agent class");
  } else {
    long long total = 0;
    std::set<std::string> names;
    for (const auto& entry : cfg.composition) {
      total += entry.count;
      if (entry.count < 0)
        fail("composition count for class '" + entry.agent_class.name +
             "' is negative");
      if (!(entry.agent_class.v_max > 0.0))
        fail("class '" + entry.agent_class.name + "' v_max must be positive");
      if (entry.agent_class.name.empty()) fail("agent class name is empty");
      if (!names.insert(entry.agent_class.name).second)
        fail("duplicate agent class name '" + entry.agent_class.name + "'");
    }
    if (total != cfg.N) {
      std::ostringstream os;
      os << "composition counts sum to " << total << ", expected N=" << cfg.N;
      fail(os.str());
    }
  }

  if (!(cfg.a_R_min > 0.0)) fail("a_R_min must be positive");
  if (!(cfg.a_R_min < cfg.a_R_max)) fail("a_R_min must be below a_R_max");
  if (!(cfg.delta > 0.0)) fail("repulsion step delta must be positive");
  if (cfg.d < 1) fail("repulsion exponent d must be at least 1");
  if (!(cfg.repulsion_gain >= 0.0)) fail("repulsion_gain must be nonnegative");
  if (!(cfg.target_speed >= 0.0)) fail("target_speed must be nonnegative");
  if (!(cfg.target_radius > 0.0)) fail("target_radius must be positive");
  if (cfg.T_f < 1) fail("horizon T_f must be at least 1");
  if (cfg.heading_hold_range.first < 1 ||
      cfg.heading_hold_range.second < cfg.heading_hold_range.first)
    fail("heading_hold_range must satisfy 1 <= min <= max");
  if (cfg.histogram_bins < 1) fail("histogram_bins must be at least 1");
  if (!std::isfinite(cfg.omega)) fail("omega must be finite");
  if (!std::isfinite(cfg.c)) fail("social weight c must be finite");

  return errors;
}

const SimConfig& validate(const SimConfig& cfg) {
  const auto errors = validation_errors(cfg);
  if (errors.empty()) return cfg;
  std::string msg = "invalid config:";
  for (const auto& e : errors) msg += "\n  - " + e;
  throw ConfigError(msg);
}

SimState init_swarm(const SimConfig& cfg, RngStream& rng) {
  const int n = cfg.N;
  SimState state;
  SwarmState& swarm = state.swarm;

  swarm.positions.resize(2, n);
  swarm.velocities = Eigen::Matrix2Xd::Zero(2, n);
  swarm.repulsion = Eigen::VectorXd::Constant(n, cfg.a_R_max);
  swarm.objectives = Eigen::VectorXi::Zero(n);

  swarm.classes.reserve(cfg.composition.size());
  for (const auto& entry : cfg.composition)
    swarm.classes.push_back(entry.agent_class);

  swarm.class_ids.reserve(n);
  for (std::size_t c = 0; c < cfg.composition.size(); ++c)
    swarm.class_ids.insert(swarm.class_ids.end(), cfg.composition[c].count,
                           static_cast<int>(c));

  for (int i = 0; i < n; ++i) {
    swarm.positions(0, i) = cfg.L * rng.draw_unit();
    swarm.positions(1, i) = cfg.L * rng.draw_unit();
  }

  TargetState& target = state.target;
  target.position = Vec2(cfg.L * rng.draw_unit(), cfg.L * rng.draw_unit());
  target.heading = rng.draw_heading();
  target.heading_hold = rng.draw_int(cfg.heading_hold_range.first,
                                     cfg.heading_hold_range.second);
  target.speed = cfg.target_speed;
  target.radius = cfg.target_radius;

  for (int i = 0; i < n; ++i)
    swarm.objectives(i) = objective(swarm.positions.col(i), target);

  return state;
}

SimState init_swarm(const SimConfig& cfg) {
  RngStream rng = RngStream::keyed(cfg.seed, kRngInit);
  return init_swarm(cfg, rng);
}

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

SpeedLimitMode parse_speed_limit_mode(const std::string& s) {
  if (s == "cap") return SpeedLimitMode::kCap;
  if (s == "divide") return SpeedLimitMode::kDivide;
  bad_key("speed_limit_mode", "expected \"cap\" or \"divide\", got \"" + s + "\"");
}

FluctuationMode parse_fluctuation_mode(const std::string& s) {
  if (s == "norm_sum") return FluctuationMode::kNormSum;
  if (s == "vector_sum") return FluctuationMode::kVectorSum;
  bad_key("fluctuation_mode",
          "expected \"norm_sum\" or \"vector_sum\", got \"" + s + "\"");
}

std::vector<ClassCount> parse_composition(const json& arr) {
  if (!arr.is_array()) bad_key("composition", "expected an array");
  std::vector<ClassCount> out;
  for (const auto& item : arr) {
    if (!item.is_object())
      bad_key("composition", "entries must be objects");
    for (const auto& [key, value] : item.items()) {
      (void)value;
      if (key != "name" && key != "v_max" && key != "count")
        bad_key("composition", "unknown entry key '" + key + "'");
    }
    ClassCount entry;
    entry.agent_class.name = item.at("name").get<std::string>();
    entry.agent_class.v_max = item.at("v_max").get<double>();
    entry.count = item.at("count").get<int>();
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

SimConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  SimConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "L") cfg.L = value.get<double>();
      else if (key == "N") cfg.N = value.get<int>();
      else if (key == "composition") cfg.composition = parse_composition(value);
      else if (key == "k") cfg.k = value.get<int>();
      else if (key == "omega") cfg.omega = value.get<double>();
      else if (key == "c") cfg.c = value.get<double>();
      else if (key == "a_R_min") cfg.a_R_min = value.get<double>();
      else if (key == "a_R_max") cfg.a_R_max = value.get<double>();
      else if (key == "delta") cfg.delta = value.get<double>();
      else if (key == "d") cfg.d = value.get<int>();
      else if (key == "repulsion_gain") cfg.repulsion_gain = value.get<double>();
      else if (key == "target_speed") cfg.target_speed = value.get<double>();
      else if (key == "target_radius") cfg.target_radius = value.get<double>();
      else if (key == "T_f") cfg.T_f = value.get<std::int64_t>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "heading_hold_range") {
        if (!value.is_array() || value.size() != 2)
          bad_key(key, "expected [min, max]");
        cfg.heading_hold_range = {value[0].get<std::int64_t>(),
                                  value[1].get<std::int64_t>()};
      } else if (key == "speed_limit_mode") {
        cfg.speed_limit_mode =
            parse_speed_limit_mode(value.get<std::string>());
      } else if (key == "fluctuation_mode") {
        cfg.fluctuation_mode =
            parse_fluctuation_mode(value.get<std::string>());
      } else if (key == "histogram_bins") {
        cfg.histogram_bins = value.get<int>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  }
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::system_error(errno, std::generic_category(),
                            "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw std::system_error(errno, std::generic_category(),
                            "cannot read config file '" + path.string() + "'");
  return parse_config(buf.str());
}

const char* to_string(SpeedLimitMode mode) {
  return mode == SpeedLimitMode::kCap ? "cap" : "divide";
}

const char* to_string(FluctuationMode mode) {
  return mode == FluctuationMode::kNormSum ? "norm_sum" : "vector_sum";
}

}  // namespace swarmsim
