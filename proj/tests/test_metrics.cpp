#include <doctest.h>

#include <cmath>
#include <vector>

#include "swarmsim/metrics.hpp"
#include "swarmsim/rng.hpp"

using namespace swarmsim;

TEST_CASE("uniform motion has zero fluctuations") {
  Eigen::Matrix2Xd v(2, 3);
  v.col(0) << 1.0, 1.0;
  v.col(1) << 1.0, 1.0;
  v.col(2) << 1.0, 1.0;
  CHECK(velocity_fluctuations(v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two opposed agents keep their velocities as fluctuations") {
  Eigen::Matrix2Xd v(2, 2);
  v.col(0) << 1.0, 0.0;
  v.col(1) << -1.0, 0.0;
  const Eigen::Matrix2Xd u = velocity_fluctuations(v);
  CHECK(u.col(0) == Vec2(1.0, 0.0));
  CHECK(u.col(1) == Vec2(-1.0, 0.0));
}

TEST_CASE("fluctuations always sum to zero") {
  RngStream rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Matrix2Xd v(2, 7);
    for (int i = 0; i < 7; ++i)
      v.col(i) << rng.draw_unit() * 10 - 5, rng.draw_unit() * 10 - 5;
    const Vec2 sum = velocity_fluctuations(v).rowwise().sum();
    CHECK(sum.norm() < 1e-12);
  }
}

TEST_CASE("average maximum speed weights classes by head count") {
  const std::vector<ClassCount> mixed = {{{"fast", 2.6}, 15},
                                         {{"slow", 1.0}, 35}};
  CHECK(avg_max_speed(mixed) == doctest::Approx(1.48).epsilon(1e-12));
  CHECK(avg_max_speed({{{"slow", 1.0}, 50}}) == doctest::Approx(1.0));
  const std::vector<ClassCount> all_fast = {{{"fast", 2.6}, 50},
                                            {{"slow", 1.0}, 0}};
  CHECK(avg_max_speed(all_fast) == doctest::Approx(2.6));
}

TEST_CASE("cumulative fluctuation magnitude, single-step hand value") {
  Eigen::Matrix2Xd v(2, 2);
  v.col(0) << 1.0, 0.0;
  v.col(1) << -1.0, 0.0;
  CHECK(cumulative_fluctuation({v}, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identical velocities give zero response") {
  Eigen::Matrix2Xd v(2, 4);
  for (int i = 0; i < 4; ++i) v.col(i) << 0.3, -0.4;
  CHECK(cumulative_fluctuation({v, v, v}, 1.48) == 0.0);
}

TEST_CASE("response is invariant under joint speed rescaling") {
  RngStream rng(23);
  std::vector<Eigen::Matrix2Xd> trace, scaled;
  for (int t = 0; t < 5; ++t) {
    Eigen::Matrix2Xd v(2, 6);
    for (int i = 0; i < 6; ++i)
      v.col(i) << rng.draw_unit() - 0.5, rng.draw_unit() - 0.5;
    trace.push_back(v);
    scaled.push_back(3.7 * v);
  }
  CHECK(cumulative_fluctuation(trace, 1.48) ==
        doctest::Approx(cumulative_fluctuation(scaled, 3.7 * 1.48))
            .epsilon(1e-12));
}

TEST_CASE("vector-sum reading collapses to zero") {
  RngStream rng(29);
  std::vector<Eigen::Matrix2Xd> trace;
  for (int t = 0; t < 5; ++t) {
    Eigen::Matrix2Xd v(2, 6);
    for (int i = 0; i < 6; ++i)
      v.col(i) << rng.draw_unit() - 0.5, rng.draw_unit() - 0.5;
    trace.push_back(v);
  }
  CHECK(cumulative_fluctuation(trace, 1.0, FluctuationMode::kVectorSum) <
        1e-12);
  CHECK(cumulative_fluctuation(trace, 1.0) > 0.01);
}

TEST_CASE("heading-bearing correlation endpoints") {
  const Vec2 bearing(1.0, 0.0);
  CHECK(heading_bearing({2.0, 0.0}, bearing) == doctest::Approx(1.0));
  CHECK(heading_bearing({-0.5, 0.0}, bearing) == doctest::Approx(-1.0));
  CHECK(heading_bearing({0.0, 0.0}, bearing) == 0.0);
  CHECK(heading_bearing({0.0, 3.0}, bearing) == doctest::Approx(0.0));
}

TEST_CASE("correlation stays inside [-1, 1] for random inputs") {
  RngStream rng(37);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec2 v(rng.draw_unit() * 10 - 5, rng.draw_unit() * 10 - 5);
    const double phi = heading_bearing(v, rng.draw_heading());
    REQUIRE(phi >= -1.0);
    REQUIRE(phi <= 1.0);
  }
}

TEST_CASE("phi binning: zero lands in the bin containing zero") {
  CHECK(phi_bin_index(0.0, 20) == 10);   // [0, 0.1)
  CHECK(phi_bin_index(0.0, 21) == 10);   // dedicated center bin
  CHECK(phi_bin_index(1.0, 20) == 19);   // top bin closed at 1
  CHECK(phi_bin_index(-1.0, 20) == 0);
}

TEST_CASE("histogram of all-stationary steps puts mass N at zero") {
  const int n = 5;
  std::vector<Eigen::VectorXd> samples(7, Eigen::VectorXd::Zero(n));
  const Histogram h = histogram_phi(samples, 20);
  CHECK(h.mass() == doctest::Approx(n));
  CHECK(h.mass_at(0.0) == doctest::Approx(n));
}

TEST_CASE("histogram of straight pursuit puts mass N in the top bin") {
  const int n = 4;
  std::vector<Eigen::VectorXd> samples(3, Eigen::VectorXd::Ones(n));
  const Histogram h = histogram_phi(samples, 20);
  CHECK(h.weights.back() == doctest::Approx(n));
  CHECK(h.mass() == doctest::Approx(n));
}

TEST_CASE("one step with opposite correlations fills both extreme bins") {
  Eigen::VectorXd phis(2);
  phis << 1.0, -1.0;
  const Histogram h = histogram_phi({phis}, 20);
  CHECK(h.weights.front() == doctest::Approx(1.0));
  CHECK(h.weights.back() == doctest::Approx(1.0));
  CHECK(h.mass() == doctest::Approx(2.0));
}

TEST_CASE("histogram rejects out-of-range samples") {
  Eigen::VectorXd phis(1);
  phis << 1.5;
  CHECK_THROWS_AS(histogram_phi({phis}, 20), std::invalid_argument);
}

TEST_CASE("time on target counts flagged steps") {
  CHECK(time_on_target({true, false, true, true}) == doctest::Approx(0.75));
  CHECK(time_on_target({false, false}) == 0.0);
  CHECK(time_on_target({true, true, true}) == 1.0);
}

namespace {

struct SyntheticTrace {
  std::vector<Eigen::Matrix2Xd> positions;
  std::vector<Eigen::Matrix2Xd> velocities;
  TargetState target;
  int n = 0;
};

SyntheticTrace make_trace(int n, int steps, std::uint64_t seed) {
  SyntheticTrace trace;
  trace.n = n;
  trace.target.position = Vec2(50.0, 50.0);
  trace.target.radius = 5.0;
  RngStream rng(seed);
  for (int t = 0; t < steps; ++t) {
    Eigen::Matrix2Xd pos(2, n), vel(2, n);
    for (int i = 0; i < n; ++i) {
      pos.col(i) << rng.draw_unit() * 100, rng.draw_unit() * 100;
      vel.col(i) << rng.draw_unit() * 4 - 2, rng.draw_unit() * 4 - 2;
    }
    if (t % 3 == 0) vel.col(0).setZero();  // exercise the stationary branch
    trace.positions.push_back(pos);
    trace.velocities.push_back(vel);
  }
  return trace;
}

}  // namespace

TEST_CASE("accumulator agrees with the offline recomputation") {
  const SyntheticTrace trace = make_trace(9, 40, 101);
  MetricsAccumulator acc(trace.n, 20);
  for (std::size_t t = 0; t < trace.positions.size(); ++t)
    acc.add_step(trace.positions[t], trace.velocities[t], trace.target);

  const double v_bar = 1.48;
  const double xi_offline = cumulative_fluctuation(trace.velocities, v_bar);
  CHECK(acc.xi(v_bar) ==
        doctest::Approx(xi_offline).epsilon(1e-10));

  std::vector<Eigen::VectorXd> phi_steps;
  std::vector<bool> flags;
  for (std::size_t t = 0; t < trace.positions.size(); ++t) {
    Eigen::VectorXd phis(trace.n);
    bool any = false;
    for (int i = 0; i < trace.n; ++i) {
      const Vec2 bearing =
          bearing_to(trace.positions[t].col(i), trace.target.position);
      phis(i) = heading_bearing(trace.velocities[t].col(i), bearing);
      any = any || (trace.positions[t].col(i) - trace.target.position)
                           .norm() <= trace.target.radius;
    }
    phi_steps.push_back(phis);
    flags.push_back(any);
  }
  const Histogram offline = histogram_phi(phi_steps, 20);
  const Histogram streamed = acc.histogram();
  for (int b = 0; b < 20; ++b)
    CHECK(streamed.weights[b] == doctest::Approx(offline.weights[b]));
  CHECK(acc.time_on_target() == doctest::Approx(time_on_target(flags)));
  CHECK(streamed.mass() == doctest::Approx(trace.n));
}

TEST_CASE("merging split accumulators equals the single pass") {
  const SyntheticTrace trace = make_trace(6, 30, 202);
  MetricsAccumulator whole(trace.n, 20);
  MetricsAccumulator first(trace.n, 20);
  MetricsAccumulator second(trace.n, 20);
  for (std::size_t t = 0; t < trace.positions.size(); ++t) {
    whole.add_step(trace.positions[t], trace.velocities[t], trace.target);
    auto& half = t < trace.positions.size() / 2 ? first : second;
    half.add_step(trace.positions[t], trace.velocities[t], trace.target);
  }
  first.merge(second);
  CHECK(first.steps() == whole.steps());
  CHECK(first.xi(1.48) == doctest::Approx(whole.xi(1.48)).epsilon(1e-12));
  CHECK(first.time_on_target() == whole.time_on_target());
  const Histogram a = first.histogram();
  const Histogram b = whole.histogram();
  for (int bin = 0; bin < 20; ++bin)
    CHECK(a.weights[bin] == doctest::Approx(b.weights[bin]));
}
