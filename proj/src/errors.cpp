#include "ptgp/errors.hpp"

namespace ptgp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MetricNotPositive: return "MetricNotPositive";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::BrokenPTPhase: return "BrokenPTPhase";
    case ErrorCode::LevelOrderSwap: return "LevelOrderSwap";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::ZeroOverlap: return "ZeroOverlap";
    case ErrorCode::ImaginaryLeak: return "ImaginaryLeak";
    case ErrorCode::AdiabaticityBreakdown: return "AdiabaticityBreakdown";
    case ErrorCode::NotTwoLevel: return "NotTwoLevel";
    case ErrorCode::UnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

bool is_physics_domain(ErrorCode code) {
  switch (code) {
    case ErrorCode::MetricNotPositive:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::BrokenPTPhase:
    case ErrorCode::LevelOrderSwap:
    case ErrorCode::StepTooCoarse:
    case ErrorCode::ZeroOverlap:
    case ErrorCode::ImaginaryLeak:
    case ErrorCode::AdiabaticityBreakdown:
    case ErrorCode::NotTwoLevel:
    case ErrorCode::UnsupportedParameters:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NotHermitian:
    case ErrorCode::NonConvergence:
    case ErrorCode::SingularMatrix:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace ptgp
