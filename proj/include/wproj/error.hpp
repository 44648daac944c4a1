#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wproj {

enum class ErrorCode {
  ZeroScalar,
  ZeroVector,
  DimMismatch,
  PivotTooSmall,
  NotRankOne,
  ZeroMatrix,
  StepTooSmall,
  DomainViolation,
  FrameMismatch,
  NoRealRoot,
  UnknownCheck,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

  /// True for errors that describe a point outside an operation's domain
  /// (as opposed to malformed input or programming errors).
  bool is_domain_error() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace wproj
