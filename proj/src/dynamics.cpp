#include "swarmsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "swarmsim/target.hpp"

namespace swarmsim {

namespace {

// x^p for small nonnegative integer p, by repeated squaring.
double ipow(double x, int p) {
  double result = 1.0;
  double base = x;
  while (p > 0) {
    if (p & 1) result *= base;
    base *= base;
    p >>= 1;
  }
  return result;
}

}  // namespace

Vec2 select_nbest(int i, const StepContext& ctx) {
  if (ctx.objectives(i) == -1) return ctx.positions.col(i);
  for (std::int32_t j : ctx.neighbors.of(i))
    if (ctx.objectives(j) == -1) return ctx.positions.col(j);
  return ctx.positions.col(i);
}

bool target_seen(int i, const StepContext& ctx) {
  if (ctx.objectives(i) == -1) return true;
  for (std::int32_t j : ctx.neighbors.of(i))
    if (ctx.objectives(j) == -1) return true;
  return false;
}

Vec2 pso_velocity(const Vec2& v, const Vec2& x, const Vec2& nbest,
                  double omega, double c, double r) {
  return omega * v + c * r * (nbest - x);
}

Vec2 repulsion_velocity(int i, const StepContext& ctx, double a_R, int d,
                        double gain, double v_max, RngStream& rng) {
  const double scale = gain * a_R;
  Vec2 sum = Vec2::Zero();
  for (std::int32_t j : ctx.neighbors.of(i)) {
    const Vec2 r_ij = ctx.positions.col(j) - ctx.positions.col(i);
    const double dist = r_ij.norm();
    if (dist < kCoincidenceFloor) {
      const double mag = std::min(ipow(scale / kCoincidenceFloor, d), v_max);
      sum += mag * rng.draw_heading();
    } else {
      sum -= ipow(scale / dist, d) / dist * r_ij;
    }
  }
  return sum;
}

double update_repulsion_strength(double a_R, bool seen, double delta,
                                 double a_R_min, double a_R_max) {
  return seen ? std::max(a_R - delta, a_R_min)
              : std::min(a_R + delta, a_R_max);
}

Vec2 limit_speed(const Vec2& v, double v_max) {
  const double n2 = v.squaredNorm();
  if (n2 <= v_max * v_max) return v;
  return v * (v_max / std::sqrt(n2));
}

namespace {

// Position clamp with the velocity component normal to a violated wall
// zeroed.
void clamp_to_arena(Vec2& x, Vec2& v, double L) {
  for (int a = 0; a < 2; ++a) {
    if (x(a) < 0.0) {
      x(a) = 0.0;
      v(a) = 0.0;
    } else if (x(a) > L) {
      x(a) = L;
      v(a) = 0.0;
    }
  }
}

}  // namespace

void step(SimState& state, const SimConfig& cfg, std::span<const int> order) {
  SwarmState& swarm = state.swarm;
  const int n = swarm.size();

  for (int i = 0; i < n; ++i)
    swarm.objectives(i) = objective(swarm.positions.col(i), state.target);

  const NeighborSet neighbors = knn(swarm.positions, cfg.k);
  const StepContext ctx{swarm.positions, swarm.velocities, swarm.objectives,
                        neighbors, state.target};

  Eigen::Matrix2Xd next_pos(2, n);
  Eigen::Matrix2Xd next_vel(2, n);
  Eigen::VectorXd next_rep(n);

  auto update_agent = [&](int i) {
    const double v_max = swarm.v_max_of(i);
    RngStream agent_rng = RngStream::keyed(
        cfg.seed, kRngAgent, static_cast<std::uint64_t>(state.step_index),
        static_cast<std::uint64_t>(i));
    const double r = agent_rng.draw_unit();

    const Vec2 nbest = select_nbest(i, ctx);
    const Vec2 v_pso = pso_velocity(swarm.velocities.col(i),
                                    swarm.positions.col(i), nbest, cfg.omega,
                                    cfg.c, r);
    const Vec2 v_rep = repulsion_velocity(i, ctx, swarm.repulsion(i), cfg.d,
                                          cfg.repulsion_gain, v_max,
                                          agent_rng);
    next_rep(i) = update_repulsion_strength(swarm.repulsion(i),
                                            target_seen(i, ctx), cfg.delta,
                                            cfg.a_R_min, cfg.a_R_max);

    Vec2 v = v_pso + v_rep;
    v = cfg.speed_limit_mode == SpeedLimitMode::kCap ? limit_speed(v, v_max)
                                                     : Vec2(v / v_max);
    Vec2 x = swarm.positions.col(i) + v;
    clamp_to_arena(x, v, cfg.L);

    next_pos.col(i) = x;
    next_vel.col(i) = v;
  };

  if (order.empty()) {
    for (int i = 0; i < n; ++i) update_agent(i);
  } else {
    for (int i : order) update_agent(i);
  }

  swarm.positions.swap(next_pos);
  swarm.velocities.swap(next_vel);
  swarm.repulsion.swap(next_rep);

  RngStream target_rng = RngStream::keyed(
      cfg.seed, kRngTarget, static_cast<std::uint64_t>(state.step_index));
  state.target = advance_target(state.target, cfg.L, cfg.heading_hold_range,
                                target_rng);
  ++state.step_index;
}

void step(SimState& state, const SimConfig& cfg) { step(state, cfg, {}); }

}  // namespace swarmsim
