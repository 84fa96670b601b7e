#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "swarmsim/model.hpp"

namespace swarmsim {

/// Per-agent velocity fluctuations u_i = v_i - <v_j>, column per agent.
Eigen::Matrix2Xd velocity_fluctuations(const Eigen::Matrix2Xd& velocities);

/// Count-weighted mean of the class maximum speeds.
double avg_max_speed(const std::vector<ClassCount>& composition);

/// Cumulative velocity fluctuation magnitude over a stored velocity trace:
/// (1 / (N T v_bar_max)) * sum_t sum_j ||u_j[t]|| in the norm-sum reading,
/// or the norm of the accumulated fluctuation vector sum in the (degenerate)
/// vector-sum reading.
double cumulative_fluctuation(
    const std::vector<Eigen::Matrix2Xd>& velocity_trace, double v_bar_max,
    FluctuationMode mode = FluctuationMode::kNormSum);

/// Heading-bearing correlation: (v . bearing) / ||v||, clamped to [-1, 1];
/// 0 for a stationary agent. `bearing` must be a unit vector.
double heading_bearing(const Vec2& v, const Vec2& bearing);

/// Unit bearing from an agent position toward the target center; zero when
/// the agent sits exactly on the center (the correlation is 0 there).
Vec2 bearing_to(const Vec2& agent_pos, const Vec2& target_pos);

/// Time-averaged histogram over [-1, 1]: weights are counts divided by the
/// number of steps, so total mass equals the agent count.
struct Histogram {
  std::vector<double> edges;    // bins + 1 ascending edges over [-1, 1]
  std::vector<double> weights;  // counts / steps

  int bins() const { return static_cast<int>(weights.size()); }
  double mass() const;
  /// Weight of the bin whose interval contains the given value.
  double mass_at(double value) const;
  /// Total weight of bins whose left edge is at or above `lo`.
  double mass_above(double lo) const;
};

/// Index of the bin containing `phi`; the top bin is closed at 1.
int phi_bin_index(double phi, int bins);

/// Histogram of per-step per-agent correlation samples. Throws
/// std::invalid_argument when a sample falls outside [-1, 1].
Histogram histogram_phi(const std::vector<Eigen::VectorXd>& phi_per_step,
                        int bins);

/// Fraction of steps on which at least one agent detects the target.
double time_on_target(const std::vector<bool>& any_agent_on_target);

/// Streaming accumulator for the three run metrics. One owner per run;
/// accumulators over disjoint step ranges can be merged.
class MetricsAccumulator {
 public:
  MetricsAccumulator(int n_agents, int bins,
                     FluctuationMode mode = FluctuationMode::kNormSum);

  /// Consumes one step sample: agent positions x_t, the velocities applied
  /// at step t, and the step-t target.
  void add_step(const Eigen::Matrix2Xd& positions,
                const Eigen::Matrix2Xd& velocities, const TargetState& target);

  /// Folds in an accumulator built over a disjoint step range.
  void merge(const MetricsAccumulator& other);

  std::int64_t steps() const { return steps_; }
  std::int64_t on_target_steps() const { return on_target_steps_; }

  double xi(double v_bar_max) const;
  double time_on_target() const;
  Histogram histogram() const;

 private:
  int n_agents_;
  int bins_;
  FluctuationMode mode_;
  std::int64_t steps_ = 0;
  std::int64_t on_target_steps_ = 0;
  double fluct_norm_sum_ = 0.0;
  Vec2 fluct_vec_sum_ = Vec2::Zero();
  std::vector<std::int64_t> bin_counts_;
};

}  // namespace swarmsim
