#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace keller {

enum class ErrorCode {
  InvalidArgument,
  EvaluationOverflow,
  DegreeBoundViolated,
  NotKeller,
  NotAnAutomorphism,
  DegenerateAffine,
  BothConstantInY,
  NonConvergence,
  ResultantVanishes,
  Unstable,
  NotPolynomial,
  BothConstant,
  NoPositiveValuation,
  IdenticallyZero,
  InvariantViolation,
  DivisionByZeroDistance,
  BoxOverflow,
  SchemaError,
  TagMismatch,
  DuplicateName,
};

std::string_view toString(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace keller
