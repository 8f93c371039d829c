#pragma once

#include <stdexcept>
#include <string>

namespace ptgp {

enum class ErrorCode {
  NonConvergence,
  NotHermitian,
  NotPositiveDefinite,
  SingularMatrix,
  DimensionMismatch,
  NonFinite,
  InvalidArgument,
  MetricNotPositive,
  DegenerateSpectrum,
  BrokenPTPhase,
  LevelOrderSwap,
  StepTooCoarse,
  ZeroOverlap,
  ImaginaryLeak,
  AdiabaticityBreakdown,
  NotTwoLevel,
  UnsupportedParameters,
  Config,
};

const char* to_string(ErrorCode code);

// Physics-domain failures (broken PT phase, degeneracies, ...) as opposed to
// usage errors or numerical-kernel failures.
bool is_physics_domain(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptgp
