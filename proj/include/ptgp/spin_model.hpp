#pragma once

#include "ptgp/numkernel.hpp"
#include "ptgp/ptsystem.hpp"

namespace ptgp::spin {

// Spin matrices (J_x, J_y, J_z) for spin j, basis m = j, j-1, ..., -j.
struct SpinMatrices {
  ComplexMatrix x, y, z;
};

SpinMatrices spin_matrices(double j);

// H = epsilon + 2 (a n^r + i b n^theta) . J with metric exp(-2 eta n^phi . J),
// tanh eta = b / a. j = 1/2 reproduces the two-level model.
PTSystem make_system(double a, double b, double epsilon, double j);

// Latitude-loop theta1 for level m (levels sorted by energy, m = -j .. j):
// 2 pi (m z - j) with z = (a cos theta - i b sin theta) / sqrt(a^2 - b^2),
// real part reduced to [0, 2pi).
Complex latitude_theta1(double a, double b, double j, double m, double theta);

}  // namespace ptgp::spin
