#include "crn/error.hpp"

namespace crn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonpositiveState: return "NonpositiveState";
    case ErrorKind::NegativeState: return "NegativeState";
    case ErrorKind::NoSeparator: return "NoSeparator";
    case ErrorKind::NotASeparator: return "NotASeparator";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotDeficiencyZero: return "NotDeficiencyZero";
    case ErrorKind::NotFirstOrder: return "NotFirstOrder";
    case ErrorKind::NotConserved: return "NotConserved";
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::NegativeOvershoot: return "NegativeOvershoot";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace crn
