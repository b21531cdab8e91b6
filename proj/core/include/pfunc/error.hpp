#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfunc {

enum class ErrorCode {
  DomainError,
  NoBracket,
  NotMonotone,
  NonFinite,
  BadParams,
  PtNonPositive,
  GridTooSmall,
  DegenerateHessian,
  BallOutOfBounds,
  NoConvergence,
  LinearSolveFailure,
  EllipticityLost,
  BlowUp,
  DegenerateEllipticity,
  NotASolution,
  HypothesisFail,
  PNotConstant,
  ModeMismatch,
  NotSubharmonic,
  MarginTooSmall,
  NotConvex,
  NotSubsolution,
  ConfigError,
  UnknownId,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure
/// class and the message carries location and values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pfunc
