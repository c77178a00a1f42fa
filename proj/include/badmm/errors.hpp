#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace badmm {

enum class ErrorKind {
  NotSpd,
  NoConvergence,
  InvalidParameter,
  InvalidBracket,
  DimensionMismatch,
  DomainViolation,
  ConvexityViolation,
  StrategyMismatch,
  SubproblemFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` distinguishes failure modes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Solver-level failures the CLI maps to exit code 3.
  bool is_solver_failure() const noexcept {
    return kind_ == ErrorKind::NotSpd || kind_ == ErrorKind::ConvexityViolation ||
           kind_ == ErrorKind::SubproblemFailure || kind_ == ErrorKind::StrategyMismatch ||
           kind_ == ErrorKind::NoConvergence;
  }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSpd: return "NotSpd";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidBracket: return "InvalidBracket";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::ConvexityViolation: return "ConvexityViolation";
    case ErrorKind::StrategyMismatch: return "StrategyMismatch";
    case ErrorKind::SubproblemFailure: return "SubproblemFailure";
  }
  return "Unknown";
}

}  // namespace badmm
