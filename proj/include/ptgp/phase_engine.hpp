#pragma once

#include <optional>
#include <vector>

#include "ptgp/gaugemap.hpp"
#include "ptgp/numkernel.hpp"
#include "ptgp/path.hpp"
#include "ptgp/ptsystem.hpp"
#include "ptgp/tolerances.hpp"

namespace ptgp {

struct WilsonOptions {
  // Symmetric link 1/2 [log<Phi_k|Psi_k+1> - log<Phi_k+1|Psi_k>] instead of the
  // plain log<Phi_k|Psi_k+1>. Both are gauge invariant.
  bool two_sided = true;
  // Combine with the stride-2 sub-loop to cancel the O(h^2) term.
  bool richardson = true;
};

struct WilsonPhase {
  Complex theta;          // real part in [0, 2pi); imaginary part never wrapped
  long branch = 0;        // unwrapped real part = theta.real() + 2 pi branch
  double min_overlap = 0; // smallest |<Phi_k|Psi_k+1>| seen

  double unwrapped_real() const;
};

// theta = i * sum_k link_k over consecutive samples. With `closed`, a final
// link from the last sample back to the first is added (the two coincide as
// parameter points, so this link removes the gauge mismatch). Throws
// ZeroOverlap when a link overlap falls below `zero_overlap`.
WilsonPhase wilson_phase(const std::vector<ComplexVector>& right,
                         const std::vector<ComplexVector>& left, bool closed,
                         const WilsonOptions& opts = {}, double zero_overlap = 1e-6);

// Level-n column of a spectrum sequence.
std::vector<ComplexVector> right_states(const std::vector<BiorthogonalSpectrum>& spectra,
                                        std::size_t level);
std::vector<ComplexVector> left_states(const std::vector<BiorthogonalSpectrum>& spectra,
                                       std::size_t level);

WilsonPhase theta1_loop(const PTSystem& sys, const LoopPath& path, std::size_t level,
                        const Tolerances& tol = {}, const WilsonOptions& opts = {});
WilsonPhase theta1_from_spectra(const std::vector<BiorthogonalSpectrum>& spectra,
                                std::size_t level, bool closed, const Tolerances& tol = {},
                                const WilsonOptions& opts = {});

struct Theta2Result {
  double theta = 0.0;           // [0, 2pi)
  long branch = 0;
  double imaginary_residual = 0.0;
};

// Line integral of i<Psi0|d|Psi0> for Psi0 = S_proper^-1 Psi (unit norm), with
// Psi taken single valued around the loop.
Theta2Result theta2_loop(const std::vector<BiorthogonalSpectrum>& spectra,
                         const ProperMapPath& pmap, std::size_t level,
                         const Tolerances& tol = {}, const WilsonOptions& opts = {});
Theta2Result theta2_loop(const PTSystem& sys, const LoopPath& path, std::size_t level,
                         const Tolerances& tol = {}, const WilsonOptions& opts = {});

// i * loop integral of <Psi|W dPsi> + 1/2 <Psi|dW|Psi> in a smooth single-valued
// gauge, fourth-order periodic differences, trapezoid rule. Needs a closed,
// uniformly sampled path. Result in [0, 2pi).
double berry_w_formula(const PTSystem& sys, const LoopPath& path, std::size_t level,
                       const Tolerances& tol = {});

struct DynamicPhases {
  Complex theta_dyn_tilde;  // theta_dyn_0 - i C
  double theta_dyn_0 = 0.0; // -integral E_n dt
  Complex correction;       // i C, C = integral <Psi0|S^-1 dS/dt|Psi0> dt
};

DynamicPhases dynamic_phases(const std::vector<BiorthogonalSpectrum>& spectra,
                             const ProperMapPath& pmap, std::size_t level);
DynamicPhases dynamic_phases(const PTSystem& sys, const LoopPath& path, std::size_t level,
                             const Tolerances& tol = {});

struct PhaseReport {
  std::size_t level = 0;
  Complex theta1;
  long branch = 0;
  double theta2 = 0.0;
  double theta2_imaginary = 0.0;
  double theta_berry = 0.0;
  Complex theta_dyn_tilde;
  double theta_dyn_0 = 0.0;
  Complex correction;
  double residual_eq24 = 0.0;  // |theta2 - theta_berry| mod 2pi
  double residual_eq25 = 0.0;  // |theta1 - theta2 - correction|, real part mod 2pi
};

std::vector<PhaseReport> phase_reports(const PTSystem& sys, const LoopPath& path,
                                       const Tolerances& tol = {},
                                       const WilsonOptions& opts = {});

struct OracleOptions {
  bool throw_on_breakdown = true;
  // RK4 steps per path interval at ramp_factor = 1; the count scales with the ramp.
  std::size_t substeps = 1;
};

struct OracleResult {
  double ramp_factor = 1.0;
  Complex phi_total;   // -i log <Phi_n(0)|Psi(T)>
  Complex predicted;   // theta_dyn_tilde + theta1 for the stretched loop
  double error = 0.0;  // |phi_total - predicted|, real part mod 2pi
  double leaked = 0.0; // population outside level n at T, fraction of the total
  bool breakdown = false;
};

// Integrates i dPsi/dt = (H - i/2 W^-1 dW/dt) Psi along the path stretched to
// ramp_factor * duration, starting from |Psi_n(0)>.
OracleResult evolve_oracle(const PTSystem& sys, const LoopPath& path, std::size_t level,
                           double ramp_factor, const Tolerances& tol = {},
                           const OracleOptions& opts = {});

// max over n and interior samples of |<Phi_n|dU/dt U^-1|Psi_n>| for
// U(t) = sum_n exp(i theta1_n(t)) |Psi_n(t)><Phi_n(0)|. Drop the prefactor for
// the control run.
double parallel_transport_residual(const PTSystem& sys, const LoopPath& path,
                                   bool include_prefactor = true, const Tolerances& tol = {});

// Open-path phases i sum link over samples 0..k for every k (index 0 is zero),
// in the gauge of `spectra`. Stride-2 extrapolation is applied at even k.
std::vector<Complex> partial_theta1(const std::vector<BiorthogonalSpectrum>& spectra,
                                    std::size_t level, const WilsonOptions& opts = {},
                                    double zero_overlap = 1e-6);

}  // namespace ptgp
