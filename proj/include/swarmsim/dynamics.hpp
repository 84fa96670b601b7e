#pragma once

#include <span>

#include <Eigen/Core>

#include "swarmsim/model.hpp"
#include "swarmsim/rng.hpp"
#include "swarmsim/topology.hpp"

namespace swarmsim {

/// Read-only snapshot of step-t state. Every per-agent update reads only
/// this snapshot (synchronous update semantics).
struct StepContext {
  const Eigen::Matrix2Xd& positions;
  const Eigen::Matrix2Xd& velocities;
  const Eigen::VectorXi& objectives;
  const NeighborSet& neighbors;
  const TargetState& target;
};

/// Neighborhood-best position for agent i: its own position when on target
/// or when no neighbor is, otherwise the position of the nearest neighbor
/// that detects the target.
Vec2 select_nbest(int i, const StepContext& ctx);

/// True when agent i or any of its neighbors detects the target.
bool target_seen(int i, const StepContext& ctx);

/// omega * v + c * r * (nbest - x); one fresh r per agent per step.
Vec2 pso_velocity(const Vec2& v, const Vec2& x, const Vec2& nbest,
                  double omega, double c, double r);

/// Inter-agent repulsion over agent i's neighbor set:
/// -sum_j (gain * a_R / r_ij)^d * r_ij_hat. Neighbors closer than the
/// coincidence floor are pushed along a pseudo-random unit direction drawn
/// from `rng`, with that pair's magnitude capped at v_max.
Vec2 repulsion_velocity(int i, const StepContext& ctx, double a_R, int d,
                        double gain, double v_max, RngStream& rng);

/// Adapts the repulsion strength: down by delta while the target is seen,
/// up by delta otherwise, clamped to [a_R_min, a_R_max].
double update_repulsion_strength(double a_R, bool seen, double delta,
                                 double a_R_min, double a_R_max);

/// Returns v unchanged when ||v|| <= v_max, otherwise scaled to exactly
/// v_max with direction preserved.
Vec2 limit_speed(const Vec2& v, double v_max);

/// Advances the whole system one step: evaluates objectives against the
/// step-t target, rebuilds the neighbor graph from step-t positions, updates
/// every agent synchronously (N_best, PSO + repulsion with the step-t a_R,
/// repulsion adaptation, class speed limit, integration, wall clamp with the
/// normal velocity component zeroed), then advances the target once.
void step(SimState& state, const SimConfig& cfg);

/// Same step with an explicit per-agent processing order; results are
/// independent of the order because draws are keyed by (step, agent).
void step(SimState& state, const SimConfig& cfg, std::span<const int> order);

inline constexpr double kCoincidenceFloor = 1e-9;

}  // namespace swarmsim
