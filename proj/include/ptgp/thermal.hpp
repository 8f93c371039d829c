#pragma once

#include <functional>
#include <vector>

#include "ptgp/numkernel.hpp"
#include "ptgp/path.hpp"
#include "ptgp/phase_engine.hpp"
#include "ptgp/ptsystem.hpp"
#include "ptgp/tolerances.hpp"

namespace ptgp {

inline constexpr double kMaxBeta = 1e4;

struct ThermalState {
  double beta = 0.0;
  BiorthogonalSpectrum spectrum;
  std::vector<double> weights;      // e^{-beta E_n} / Z
  std::vector<double> log_weights;  // log of the above

  // sum_n w_n |Psi_n><Phi_n|
  ComplexMatrix density() const;
};

// Boltzmann weights of real energies, evaluated in log space with the lowest
// energy shifted to zero.
std::vector<double> boltzmann_log_weights(const std::vector<double>& energies, double beta);

ThermalState thermal_state(const PTSystem& sys, const ParameterPoint& p, double beta,
                           const Tolerances& tol = {});

enum class Regime { EffectivePositiveT, EffectiveNegativeT, Critical };

const char* to_string(Regime r);

struct IGPReport {
  double theta_g = 0.0;  // arg(amplitude) in [0, 2pi)
  Complex amplitude;     // sum_n w_n e^{i theta1_n}
  std::vector<double> effective_weights;      // normalised e^{-beta E_n - Im theta1_n}
  std::vector<double> effective_log_weights;  // unnormalised logs
  Regime regime = Regime::EffectivePositiveT;
  bool critical = false;  // |amplitude| < tol.critical_amplitude * sum |terms|
};

// Combines energies at the base point with per-level loop phases.
IGPReport igp_from_phases(const std::vector<double>& energies,
                          const std::vector<Complex>& theta1, double beta,
                          const Tolerances& tol = {});

IGPReport igp_loop(const PTSystem& sys, const LoopPath& path, double beta,
                   const Tolerances& tol = {}, const WilsonOptions& opts = {});

// Open path: sum_n w_n exp(i theta1_n(t)) nu_n(t), nu_n(t) = <Phi_n(0)|Psi_n(t)>,
// evaluated at the last sample. A single-sample path gives amplitude 1.
IGPReport igp_open(const PTSystem& sys, const LoopPath& path, double beta,
                   const Tolerances& tol = {}, const WilsonOptions& opts = {});

// Two-level only: excited vs ground effective weight.
Regime regime_classify(const PTSystem& sys, const LoopPath& path, double beta,
                       const Tolerances& tol = {}, const WilsonOptions& opts = {});

using PathFamily = std::function<LoopPath(double)>;

struct CriticalPoint {
  double param = 0.0;
  double beta = 0.0;
  double jump = 0.0;       // |wrapped theta_G change| across beta +- jump_probe
  double amplitude = 0.0;  // |amplitude| / sum |terms| at the refined point
  // Re theta1_n reduced to [0, 2pi) at the first grid parameter and followed
  // continuously along the family.
  std::vector<double> level_phases;
};

struct ScanOptions {
  double jump_threshold = 1.5707963267948966;
  double amplitude_dip = 1e-3;
  double refine_tol = 1e-4;
  double jump_probe = 0.05;
  unsigned threads = 0;  // 0: hardware concurrency
  Tolerances tol;
  WilsonOptions wilson;
};

// Loop phases for every grid parameter (cached by the scan).
struct FamilyPhases {
  std::vector<double> params;
  std::vector<std::vector<double>> energies;  // [param][level], at each loop's base point
  std::vector<std::vector<Complex>> theta1;   // [param][level]
};

FamilyPhases family_phases(const PTSystem& sys, const PathFamily& family,
                           const std::vector<double>& params, const ScanOptions& opts = {});

std::vector<CriticalPoint> critical_scan(const PTSystem& sys, const PathFamily& family,
                                         const std::vector<double>& beta_grid,
                                         const std::vector<double>& param_grid,
                                         const ScanOptions& opts = {});

}  // namespace ptgp
