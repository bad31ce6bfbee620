#include "pgreen/error.hpp"

namespace pgreen {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::DegenerateInput: return "degenerate-input";
    case ErrorCode::InfeasibleDisc: return "infeasible-disc";
    case ErrorCode::DegenerateDisc: return "degenerate-disc";
    case ErrorCode::NotAttained: return "not-attained";
    case ErrorCode::PerturbationFailure: return "perturbation-failure";
    case ErrorCode::RadiusNudge: return "radius-nudge";
    case ErrorCode::InvalidBasepoint: return "invalid-basepoint";
    case ErrorCode::UnsupportedCovering: return "unsupported-covering";
    case ErrorCode::LiftingObstruction: return "lifting-obstruction";
    case ErrorCode::RadiusSearchFailure: return "radius-search-failure";
    case ErrorCode::NoBound: return "no-bound";
    case ErrorCode::InvalidLevel: return "invalid-level";
    case ErrorCode::NoOracle: return "no-oracle";
    case ErrorCode::VerificationFailure: return "verification-failure";
  }
  return "unknown";
}

}  // namespace pgreen
