#include "wproj/error.hpp"

namespace wproj {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroScalar: return "ZeroScalar";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::PivotTooSmall: return "PivotTooSmall";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::StepTooSmall: return "StepTooSmall";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

bool Error::is_domain_error() const noexcept {
  switch (code_) {
    case ErrorCode::ZeroScalar:
    case ErrorCode::ZeroVector:
    case ErrorCode::PivotTooSmall:
    case ErrorCode::NotRankOne:
    case ErrorCode::ZeroMatrix:
    case ErrorCode::DomainViolation:
    case ErrorCode::NoRealRoot:
      return true;
    default:
      return false;
  }
}

}  // namespace wproj
