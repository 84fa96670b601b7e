#include "swarmsim/target.hpp"

namespace swarmsim {

int objective(const Vec2& agent_pos, const TargetState& target) {
  const double r = target.radius;
  return (agent_pos - target.position).squaredNorm() <= r * r ? -1 : 0;
}

namespace {

// Folds a coordinate back into [0, L], flipping the heading component once
// per wall contact.
void reflect_axis(double& x, double& h, double L) {
  while (x < 0.0 || x > L) {
    if (x < 0.0) {
      x = -x;
      h = -h;
    } else {
      x = 2.0 * L - x;
      h = -h;
    }
  }
}

}  // namespace

TargetState advance_target(const TargetState& target, double L,
                           std::pair<std::int64_t, std::int64_t> hold_range,
                           RngStream& rng) {
  TargetState next = target;
  if (next.heading_hold <= 0) {
    next.heading = rng.draw_heading();
    next.heading_hold = rng.draw_int(hold_range.first, hold_range.second);
  }
  next.position += next.speed * next.heading;
  reflect_axis(next.position.x(), next.heading.x(), L);
  reflect_axis(next.position.y(), next.heading.y(), L);
  next.heading_hold -= 1;
  return next;
}

}  // namespace swarmsim
