#include <doctest.h>

#include <cmath>

#include "swarmsim/rng.hpp"
#include "swarmsim/target.hpp"

using namespace swarmsim;

namespace {

TargetState make_target(Vec2 pos, Vec2 heading, double speed, double radius,
                        std::int64_t hold = 1000) {
  TargetState t;
  t.position = pos;
  t.heading = heading;
  t.speed = speed;
  t.radius = radius;
  t.heading_hold = hold;
  return t;
}

}  // namespace

TEST_CASE("objective is -1 inside the disc, boundary inclusive") {
  const TargetState t = make_target({50.0, 50.0}, {1.0, 0.0}, 3.0, 5.0);
  CHECK(objective({50.0, 52.5}, t) == -1);  // half a radius away
  CHECK(objective({55.0, 50.0}, t) == -1);  // exactly on the boundary
  CHECK(objective({100.0, 50.0}, t) == 0);  // ten radii away
}

TEST_CASE("straight-line motion when no wall is near") {
  TargetState t = make_target({50.0, 50.0}, {1.0, 0.0}, 3.0, 5.0);
  RngStream rng(1);
  const TargetState next = advance_target(t, 100.0, {50, 200}, rng);
  CHECK(next.position.x() == doctest::Approx(53.0).epsilon(1e-15));
  CHECK(next.position.y() == doctest::Approx(50.0).epsilon(1e-15));
  CHECK(next.heading_hold == t.heading_hold - 1);
}

TEST_CASE("wall contact reflects the normal heading component") {
  // Mirror geometry: from x = L-1 moving +3 -> fold at L back to L-2.
  TargetState t = make_target({99.0, 50.0}, {1.0, 0.0}, 3.0, 5.0);
  RngStream rng(1);
  const TargetState next = advance_target(t, 100.0, {50, 200}, rng);
  CHECK(next.heading.x() < 0.0);
  CHECK(next.position.x() == doctest::Approx(98.0).epsilon(1e-12));
  CHECK(next.position.x() <= 100.0);
  CHECK(next.position.y() == doctest::Approx(50.0));
}

TEST_CASE("displacement norm equals speed without reflection") {
  RngStream rng(7);
  TargetState t = make_target({50.0, 50.0}, rng.draw_heading(), 3.0, 5.0, 10);
  const double L = 100.0;
  for (int s = 0; s < 500; ++s) {
    const TargetState next = advance_target(t, L, {5, 15}, rng);
    const double moved = (next.position - t.position).norm();
    const bool near_wall = next.position.x() < t.speed ||
                           next.position.x() > L - t.speed ||
                           next.position.y() < t.speed ||
                           next.position.y() > L - t.speed ||
                           t.position.x() < t.speed ||
                           t.position.x() > L - t.speed ||
                           t.position.y() < t.speed ||
                           t.position.y() > L - t.speed;
    if (!near_wall)
      CHECK(moved == doctest::Approx(t.speed).epsilon(1e-12));
    CHECK(moved <= t.speed + 1e-12);
    CHECK(moved > 0.0);
    t = next;
  }
}

TEST_CASE("target never leaves the arena and keeps a unit heading") {
  RngStream rng(42);
  TargetState t = make_target({1.0, 1.0}, {-1.0, 0.0}, 5.0, 5.0, 3);
  const double L = 100.0;
  for (int s = 0; s < 5000; ++s) {
    t = advance_target(t, L, {50, 200}, rng);
    REQUIRE(t.position.x() >= 0.0);
    REQUIRE(t.position.x() <= L);
    REQUIRE(t.position.y() >= 0.0);
    REQUIRE(t.position.y() <= L);
    REQUIRE(t.heading.norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("heading persists for the whole hold and then redraws") {
  RngStream rng(9);
  TargetState t = make_target({50.0, 50.0}, {0.0, 1.0}, 1.0, 5.0, 4);
  const Vec2 initial = t.heading;
  for (int s = 0; s < 4; ++s) {
    t = advance_target(t, 100.0, {50, 200}, rng);
    CHECK(t.heading == initial);  // no wall on this path
  }
  t = advance_target(t, 100.0, {50, 200}, rng);
  CHECK(t.heading != initial);
  CHECK(t.heading_hold >= 49);  // fresh hold minus the step just taken
  CHECK(t.heading_hold <= 199);
}
