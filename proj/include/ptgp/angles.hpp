#pragma once

#include <cmath>
#include <numbers>

namespace ptgp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// [0, 2pi)
inline double wrap_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// (-pi, pi]
inline double wrap_pi(double x) {
  double r = wrap_2pi(x);
  return r > kPi ? r - kTwoPi : r;
}

// Smallest distance between two angles.
inline double angle_distance(double a, double b) { return std::abs(wrap_pi(a - b)); }

}  // namespace ptgp
