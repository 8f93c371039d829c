#pragma once

#include <cmath>
#include <complex>

#include "ptgp/angles.hpp"
#include "ptgp/numkernel.hpp"

namespace testing {

inline const double kSqrt5 = std::sqrt(5.0);

inline double max_abs(const ptgp::ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Real parts compared modulo 2pi, imaginary parts directly.
inline double phase_error(ptgp::Complex a, ptgp::Complex b) {
  return std::hypot(ptgp::angle_distance(a.real(), b.real()), a.imag() - b.imag());
}

}  // namespace testing
