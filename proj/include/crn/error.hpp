#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crn {

enum class ErrorKind {
  InvalidArgument,
  IndexOutOfRange,
  DimensionMismatch,
  NonpositiveState,
  NegativeState,
  NoSeparator,
  NotASeparator,
  NotApplicable,
  NotDeficiencyZero,
  NotFirstOrder,
  NotConserved,
  StepLimitExceeded,
  NegativeOvershoot,
  MaxIterations,
  SingularJacobian,
  CertificateFailure,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers can branch
// on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crn
