#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace swarmsim {

using Vec2 = Eigen::Vector2d;

/// Splittable pseudo-random stream built on the splitmix64 generator.
///
/// Every draw is plain 64-bit integer arithmetic, so a given seed produces
/// the same sequence on any platform. Streams can be derived from a seed
/// plus up to three key words; the simulation keys per-agent draws by
/// (step, agent id) so results do not depend on processing order.
///
/// A stream is single-owner: never draw from one concurrently.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  /// Independent stream addressed by (seed, k1, k2, k3).
  static RngStream keyed(std::uint64_t seed, std::uint64_t k1,
                         std::uint64_t k2 = 0, std::uint64_t k3 = 0);

  std::uint64_t draw_u64();

  /// Uniform in [0, 1).
  double draw_unit();

  /// Uniform unit 2-vector.
  Vec2 draw_heading();

  /// Uniform integer in [lo, hi], both ends inclusive.
  std::int64_t draw_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Stateless 64-bit finalizer (splitmix64 mixing function).
std::uint64_t mix64(std::uint64_t z);

/// Deterministic per-run seed for sweep cell (a) and seed index (b).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

// Key words separating the independent uses of the master seed.
inline constexpr std::uint64_t kRngInit = 0x01;    // swarm + target placement
inline constexpr std::uint64_t kRngAgent = 0x02;   // per (step, agent) draws
inline constexpr std::uint64_t kRngTarget = 0x03;  // per-step target motion

}  // namespace swarmsim
