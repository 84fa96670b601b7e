#include "swarmsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace swarmsim {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

RngStream RngStream::keyed(std::uint64_t seed, std::uint64_t k1,
                           std::uint64_t k2, std::uint64_t k3) {
  std::uint64_t s = mix64(seed + 0x9E3779B97F4A7C15ull);
  s = mix64(s ^ mix64(k1 + 0x9E3779B97F4A7C15ull));
  s = mix64(s ^ mix64(k2 + 0x2545F4914F6CDD1Dull));
  s = mix64(s ^ mix64(k3 + 0xD1B54A32D192ED03ull));
  return RngStream(s);
}

std::uint64_t RngStream::draw_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

double RngStream::draw_unit() {
  // 53 mantissa bits; strictly below 1.
  return static_cast<double>(draw_u64() >> 11) * 0x1.0p-53;
}

Vec2 RngStream::draw_heading() {
  const double angle = 2.0 * std::numbers::pi * draw_unit();
  return Vec2(std::cos(angle), std::sin(angle));
}

std::int64_t RngStream::draw_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(draw_unit() * span);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
  std::uint64_t s = mix64(base ^ 0xA0761D6478BD642Full);
  s = mix64(s ^ mix64(a + 0xE7037ED1A0B428DBull));
  s = mix64(s ^ mix64(b + 0x8EBC6AF09C88C6E3ull));
  return s;
}

}  // namespace swarmsim
