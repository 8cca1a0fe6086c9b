#include "rbm/random.hpp"

#include <cmath>

namespace rbm {

Angle Angle::wrap(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // r + 2pi can round up to exactly 2pi for tiny negative inputs; that value is 0 mod 2pi.
  if (r >= kTwoPi) r = 0.0;
  return Angle(r);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngState::RngState(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double Angle::cos() const { return std::cos(value_); }

double Angle::sin() const { return std::sin(value_); }

Angle uniform_angle(RngState& rng) {
  double theta = rng.uniform01() * kTwoPi;
  if (theta >= kTwoPi) theta = std::nextafter(kTwoPi, 0.0);
  return Angle::wrap(theta);
}

double standard_normal(RngState& rng) {
  const double u1 = 1.0 - rng.uniform01();  // (0, 1]
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

int rademacher(RngState& rng) { return (rng.next_u64() >> 63) != 0 ? 1 : -1; }

}  // namespace rbm
