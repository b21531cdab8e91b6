#include "pfunc/error.hpp"

namespace pfunc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::PtNonPositive: return "PtNonPositive";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::DegenerateHessian: return "DegenerateHessian";
    case ErrorCode::BallOutOfBounds: return "BallOutOfBounds";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::LinearSolveFailure: return "LinearSolveFailure";
    case ErrorCode::EllipticityLost: return "EllipticityLost";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::DegenerateEllipticity: return "DegenerateEllipticity";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::HypothesisFail: return "HypothesisFail";
    case ErrorCode::PNotConstant: return "PNotConstant";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::NotSubharmonic: return "NotSubharmonic";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotSubsolution: return "NotSubsolution";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownId: return "UnknownId";
  }
  return "Unknown";
}

}  // namespace pfunc
