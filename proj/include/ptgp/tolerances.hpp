#pragma once

namespace ptgp {

// Numerical thresholds shared by the engines. Values are relative to the
// relevant matrix norm unless noted. The CLI overrides them per run.
struct Tolerances {
  double eig_residual = 1e-10;
  double hermitian = 1e-12;
  double positive_definite = 1e-12;
  double max_condition = 1e12;
  double degeneracy = 1e-8;
  double broken_pt = 1e-8;
  double level_match = 0.5;
  double zero_overlap = 1e-6;
  double proper_residual = 1e-4;
  double step_coarse = 0.1;
  double imaginary_leak = 1e-6;
  double adiabatic_leak = 0.01;
  double critical_amplitude = 1e-6;
  double regime_critical = 1e-9;
};

}  // namespace ptgp
