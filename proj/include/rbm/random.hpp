#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace rbm {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// An angle in radians, always reduced to [0, 2*pi).
class Angle {
 public:
  constexpr Angle() = default;

  /// Reduces an arbitrary radian value modulo 2*pi.
  static Angle wrap(double radians);

  constexpr double radians() const { return value_; }

  // Out of line so every caller sees the same rounding (no sin/cos fusion).
  double cos() const;
  double sin() const;

  Angle operator-() const { return wrap(-value_); }
  Angle operator+(Angle other) const { return wrap(value_ + other.value_); }
  constexpr bool operator==(const Angle&) const = default;

 private:
  explicit constexpr Angle(double v) : value_(v) {}
  double value_ = 0.0;
};

/// Seedable generator state.
///
/// The integer stream is std::mt19937_64 seeded with splitmix64(seed), which the
/// standard pins bit-for-bit. Floating-point draws are derived from it by fixed
/// formulas below (no std:: distributions, whose algorithms are unspecified), so a
/// seed replays identically on every conforming platform.
class RngState {
 public:
  explicit RngState(std::uint64_t seed);

  /// Independent stream for one Monte Carlo trial: seed = base_seed + trial.
  static RngState for_trial(std::uint64_t base_seed, std::uint64_t trial) {
    return RngState(base_seed + trial);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform on [0, 2*pi); one u64 per call.
Angle uniform_angle(RngState& rng);

/// Box-Muller cosine branch; two u64 per call, no cached second variate.
double standard_normal(RngState& rng);

/// +1 or -1 from the top bit of one u64.
int rademacher(RngState& rng);

}  // namespace rbm
