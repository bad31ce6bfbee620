#pragma once

#include <stdexcept>
#include <string>

namespace pgreen {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  DegenerateInput,
  InfeasibleDisc,
  DegenerateDisc,
  NotAttained,
  PerturbationFailure,
  RadiusNudge,
  InvalidBasepoint,
  UnsupportedCovering,
  LiftingObstruction,
  RadiusSearchFailure,
  NoBound,
  InvalidLevel,
  NoOracle,
  VerificationFailure,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pgreen
