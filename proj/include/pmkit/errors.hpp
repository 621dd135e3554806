#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmkit {

enum class ErrorCode {
  InvalidMatrix,
  InvalidArgument,
  Singular,
  NoConvergence,
  InvalidIndex,
  DimensionTooLarge,
  PreconditionViolated,
  NotConjugationClosed,
  ZeroElementInP0Check,
  NotAPSet,
  NotAPMatrix,
  NonPositiveDiagonal,
  CycleDetected,
  RuleUndefined,
  NonDiagonalSpec,
  NonPositiveEigenvalue,
  NonPositiveSection,
  PreconditionNotEstablished,
  ValidationFailed,
  UnknownSuite,
  ParseError,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pmkit
