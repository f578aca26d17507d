#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace fbcalc {

enum class ErrorKind {
  InvalidArgument,
  PreconditionViolation,
  UnsupportedCombination,
  DomainViolation,
  SingularResolvent,
  NumericFailure,
  UnsupportedModel,
  ConstructionFailure,
  IoError,
};

inline const char* toString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::UnsupportedCombination: return "unsupported-combination";
    case ErrorKind::DomainViolation: return "domain-violation";
    case ErrorKind::SingularResolvent: return "singular-resolvent";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::UnsupportedModel: return "unsupported-model";
    case ErrorKind::ConstructionFailure: return "construction-failure";
    case ErrorKind::IoError: return "io-error";
  }
  return "unknown";
}

// Every failure raised by the library. NumericFailure may carry the best
// estimate reached before giving up (NaN when there is none).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        double best_estimate = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(std::string(toString(kind)) + ": " + what),
        kind_(kind),
        best_estimate_(best_estimate) {}

  ErrorKind kind() const noexcept { return kind_; }
  double bestEstimate() const noexcept { return best_estimate_; }

 private:
  ErrorKind kind_;
  double best_estimate_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace fbcalc
