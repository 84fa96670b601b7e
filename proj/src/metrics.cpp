#include "swarmsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmsim/target.hpp"

namespace swarmsim {

Eigen::Matrix2Xd velocity_fluctuations(const Eigen::Matrix2Xd& velocities) {
  const Vec2 mean = velocities.rowwise().mean();
  return velocities.colwise() - mean;
}

double avg_max_speed(const std::vector<ClassCount>& composition) {
  double weighted = 0.0;
  long long total = 0;
  for (const auto& entry : composition) {
    weighted += entry.agent_class.v_max * entry.count;
    total += entry.count;
  }
  if (total < 1)
    throw std::invalid_argument("avg_max_speed: empty composition");
  return weighted / static_cast<double>(total);
}

double cumulative_fluctuation(
    const std::vector<Eigen::Matrix2Xd>& velocity_trace, double v_bar_max,
    FluctuationMode mode) {
  if (velocity_trace.empty())
    throw std::invalid_argument("cumulative_fluctuation: empty trace");
  const auto n = velocity_trace.front().cols();
  double norm_sum = 0.0;
  Vec2 vec_sum = Vec2::Zero();
  for (const auto& velocities : velocity_trace) {
    const Eigen::Matrix2Xd u = velocity_fluctuations(velocities);
    norm_sum += u.colwise().norm().sum();
    vec_sum += u.rowwise().sum();
  }
  const double denom = static_cast<double>(n) *
                       static_cast<double>(velocity_trace.size()) * v_bar_max;
  return (mode == FluctuationMode::kNormSum ? norm_sum : vec_sum.norm()) /
         denom;
}

double heading_bearing(const Vec2& v, const Vec2& bearing) {
  const double speed = v.norm();
  if (speed == 0.0) return 0.0;  // stationary-agent convention
  return std::clamp(v.dot(bearing) / speed, -1.0, 1.0);
}

Vec2 bearing_to(const Vec2& agent_pos, const Vec2& target_pos) {
  const Vec2 d = target_pos - agent_pos;
  const double dist = d.norm();
  if (dist == 0.0) return Vec2::Zero();
  return d / dist;
}

int phi_bin_index(double phi, int bins) {
  const int idx = static_cast<int>((phi + 1.0) * 0.5 * bins);
  return std::clamp(idx, 0, bins - 1);
}

double Histogram::mass() const {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

double Histogram::mass_at(double value) const {
  return weights[phi_bin_index(value, bins())];
}

double Histogram::mass_above(double lo) const {
  double total = 0.0;
  for (int b = 0; b < bins(); ++b)
    if (edges[b] >= lo) total += weights[b];
  return total;
}

namespace {

std::vector<double> bin_edges(int bins) {
  std::vector<double> edges(bins + 1);
  for (int b = 0; b <= bins; ++b)
    edges[b] = -1.0 + 2.0 * static_cast<double>(b) / bins;
  return edges;
}

}  // namespace

Histogram histogram_phi(const std::vector<Eigen::VectorXd>& phi_per_step,
                        int bins) {
  if (phi_per_step.empty())
    throw std::invalid_argument("histogram_phi: no steps");
  std::vector<std::int64_t> counts(bins, 0);
  for (const auto& phis : phi_per_step) {
    for (Eigen::Index i = 0; i < phis.size(); ++i) {
      const double phi = phis(i);
      if (phi < -1.0 || phi > 1.0)
        throw std::invalid_argument("histogram_phi: sample outside [-1, 1]");
      ++counts[phi_bin_index(phi, bins)];
    }
  }
  Histogram h;
  h.edges = bin_edges(bins);
  h.weights.resize(bins);
  const double steps = static_cast<double>(phi_per_step.size());
  for (int b = 0; b < bins; ++b)
    h.weights[b] = static_cast<double>(counts[b]) / steps;
  return h;
}

double time_on_target(const std::vector<bool>& any_agent_on_target) {
  if (any_agent_on_target.empty())
    throw std::invalid_argument("time_on_target: no steps");
  std::int64_t hits = 0;
  for (bool f : any_agent_on_target) hits += f ? 1 : 0;
  return static_cast<double>(hits) /
         static_cast<double>(any_agent_on_target.size());
}

MetricsAccumulator::MetricsAccumulator(int n_agents, int bins,
                                       FluctuationMode mode)
    : n_agents_(n_agents), bins_(bins), mode_(mode), bin_counts_(bins, 0) {
  if (n_agents < 1)
    throw std::invalid_argument("MetricsAccumulator: need at least one agent");
  if (bins < 1) throw std::invalid_argument("MetricsAccumulator: bins < 1");
}

void MetricsAccumulator::add_step(const Eigen::Matrix2Xd& positions,
                                  const Eigen::Matrix2Xd& velocities,
                                  const TargetState& target) {
  const Vec2 mean = velocities.rowwise().mean();
  bool any_on_target = false;
  for (int i = 0; i < n_agents_; ++i) {
    const Vec2 u = velocities.col(i) - mean;
    fluct_norm_sum_ += u.norm();
    fluct_vec_sum_ += u;

    const Vec2 bearing = bearing_to(positions.col(i), target.position);
    ++bin_counts_[phi_bin_index(heading_bearing(velocities.col(i), bearing),
                                bins_)];

    any_on_target |= objective(positions.col(i), target) == -1;
  }
  if (any_on_target) ++on_target_steps_;
  ++steps_;
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  if (other.n_agents_ != n_agents_ || other.bins_ != bins_)
    throw std::invalid_argument("MetricsAccumulator::merge: shape mismatch");
  steps_ += other.steps_;
  on_target_steps_ += other.on_target_steps_;
  fluct_norm_sum_ += other.fluct_norm_sum_;
  fluct_vec_sum_ += other.fluct_vec_sum_;
  for (int b = 0; b < bins_; ++b) bin_counts_[b] += other.bin_counts_[b];
}

double MetricsAccumulator::xi(double v_bar_max) const {
  const double denom = static_cast<double>(n_agents_) *
                       static_cast<double>(steps_) * v_bar_max;
  return (mode_ == FluctuationMode::kNormSum ? fluct_norm_sum_
                                             : fluct_vec_sum_.norm()) /
         denom;
}

double MetricsAccumulator::time_on_target() const {
  return static_cast<double>(on_target_steps_) / static_cast<double>(steps_);
}

Histogram MetricsAccumulator::histogram() const {
  Histogram h;
  h.edges = bin_edges(bins_);
  h.weights.resize(bins_);
  for (int b = 0; b < bins_; ++b)
    h.weights[b] =
        static_cast<double>(bin_counts_[b]) / static_cast<double>(steps_);
  return h;
}

}  // namespace swarmsim
