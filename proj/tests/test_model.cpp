#include <doctest.h>

#include <algorithm>
#include <string>

#include "swarmsim/model.hpp"

using namespace swarmsim;

namespace {

bool mentions(const std::vector<std::string>& errors, const char* needle) {
  return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) {
    return e.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("default config is valid") {
  const SimConfig cfg;  // N=50, k=20, omega=1, c=0.5, a_R in [0.375, 1.5]
  CHECK(validation_errors(cfg).empty());
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("degree below 2 is rejected by name") {
  SimConfig cfg;
  cfg.k = 1;
  const auto errors = validation_errors(cfg);
  REQUIRE_FALSE(errors.empty());
  CHECK(mentions(errors, "degree k"));
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("composition counts must sum to N") {
  SimConfig cfg;
  cfg.composition[0].count = 36;  // slow 36 + fast 15 = 51 != 50
  const auto errors = validation_errors(cfg);
  REQUIRE_FALSE(errors.empty());
  CHECK(mentions(errors, "sum to 51"));
}

TEST_CASE("every violation is reported, not just the first") {
  SimConfig cfg;
  cfg.k = 1;
  cfg.delta = 0.0;
  cfg.T_f = 0;
  const auto errors = validation_errors(cfg);
  CHECK(errors.size() >= 3);
}

TEST_CASE("init_swarm is bit-identical for the same seed") {
  const SimConfig cfg;
  const SimState a = init_swarm(cfg);
  const SimState b = init_swarm(cfg);
  CHECK(a.swarm.positions == b.swarm.positions);
  CHECK(a.target.position == b.target.position);
  CHECK(a.target.heading == b.target.heading);
  CHECK(a.target.heading_hold == b.target.heading_hold);
}

TEST_CASE("init_swarm places everything inside the arena") {
  SimConfig cfg;
  cfg.seed = 99;
  const SimState state = init_swarm(cfg);
  CHECK(state.swarm.positions.minCoeff() >= 0.0);
  CHECK(state.swarm.positions.maxCoeff() <= cfg.L);
  CHECK(state.target.position.x() >= 0.0);
  CHECK(state.target.position.x() <= cfg.L);
  CHECK(state.target.heading.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("init_swarm honors the composition exactly") {
  const SimConfig cfg;  // 35 slow + 15 fast
  const SimState state = init_swarm(cfg);
  int fast = 0;
  for (int i = 0; i < state.swarm.size(); ++i)
    if (state.swarm.classes[state.swarm.class_ids[i]].name == "fast") ++fast;
  CHECK(fast == 15);
}

TEST_CASE("init_swarm starts at rest with maximum repulsion") {
  const SimConfig cfg;
  const SimState state = init_swarm(cfg);
  CHECK(state.swarm.velocities.cwiseAbs().maxCoeff() == 0.0);
  CHECK(state.swarm.repulsion.minCoeff() == cfg.a_R_max);
  CHECK(state.swarm.repulsion.maxCoeff() == cfg.a_R_max);
}

TEST_CASE("config JSON round trip with exact field names") {
  const std::string text = R"({
    "L": 50.0, "N": 10,
    "composition": [
      {"name": "slow", "v_max": 1.0, "count": 6},
      {"name": "fast", "v_max": 2.6, "count": 4}
    ],
    "k": 3, "omega": 0.9, "c": 0.4,
    "a_R_min": 0.3, "a_R_max": 1.2, "delta": 0.02, "d": 4,
    "repulsion_gain": 5.0, "target_speed": 2.0, "target_radius": 2.5,
    "T_f": 100, "seed": 77, "heading_hold_range": [10, 20],
    "speed_limit_mode": "divide", "fluctuation_mode": "vector_sum",
    "histogram_bins": 21
  })";
  const SimConfig cfg = parse_config(text);
  CHECK(cfg.L == 50.0);
  CHECK(cfg.N == 10);
  CHECK(cfg.composition.size() == 2);
  CHECK(cfg.composition[1].count == 4);
  CHECK(cfg.k == 3);
  CHECK(cfg.omega == 0.9);
  CHECK(cfg.heading_hold_range.first == 10);
  CHECK(cfg.heading_hold_range.second == 20);
  CHECK(cfg.speed_limit_mode == SpeedLimitMode::kDivide);
  CHECK(cfg.fluctuation_mode == FluctuationMode::kVectorSum);
  CHECK(cfg.histogram_bins == 21);
  CHECK(validation_errors(cfg).empty());
}

TEST_CASE("unknown config keys are an error") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"LL": 100.0})"),
                       doctest::Contains("unknown config key 'LL'"),
                       ConfigError);
}

TEST_CASE("malformed JSON is a config error") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"k": "twenty"})"), ConfigError);
}

TEST_CASE("missing config file raises a system error") {
  CHECK_THROWS_AS(load_config("/nonexistent/nowhere.json"),
                  std::system_error);
}
