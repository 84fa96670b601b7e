#pragma once

#include <cstdint>
#include <utility>

#include "swarmsim/model.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

/// Binary objective: -1 iff the position lies within the target disc
/// (boundary inclusive), 0 otherwise.
int objective(const Vec2& agent_pos, const TargetState& target);

/// Advances the target one step: redraws heading and hold duration when the
/// hold expires, moves exactly `speed` along the heading, and reflects the
/// heading component normal to any wall it contacts. The returned position
/// stays inside [0, L]^2 and the heading stays a unit vector.
TargetState advance_target(const TargetState& target, double L,
                           std::pair<std::int64_t, std::int64_t> hold_range,
                           RngStream& rng);

}  // namespace swarmsim
