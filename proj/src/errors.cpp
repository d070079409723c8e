#include "maxvar/errors.hpp"

namespace maxvar {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::NotSinglePeak: return "NotSinglePeak";
    case ErrorKind::UnattainedSupremum: return "UnattainedSupremum";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::BreakpointContact: return "BreakpointContact";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::ClassViolation: return "ClassViolation";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace maxvar
