#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxvar {

enum class ErrorKind {
  DegenerateInterval,
  NotSinglePeak,
  UnattainedSupremum,
  SolverFailure,
  BreakpointContact,
  InvalidExponent,
  TooLarge,
  InvalidParams,
  PrecisionExceeded,
  EmptySet,
  ClassViolation,
  InvalidInput,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Numeric failures map to CLI exit code 3, everything else to 2.
  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::PrecisionExceeded ||
           kind_ == ErrorKind::SolverFailure ||
           kind_ == ErrorKind::UnattainedSupremum;
  }

 private:
  ErrorKind kind_;
};

}  // namespace maxvar
