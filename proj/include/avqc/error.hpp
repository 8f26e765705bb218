#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avqc {

enum class ErrorKind {
  NonSquare,
  NotHermitian,
  DimensionMismatch,
  InvalidState,
  InvalidChannel,
  InvalidDistribution,
  InvalidCode,
  OutOfRange,
  BlocklengthTooLarge,
  ProbeDimensionMismatch,
  RuleNotApplicable,
  ShapeMismatch,
  UnknownSubcommand,
  FileNotFound,
  SchemaViolation,
  NumericalFailure,
};

std::string_view to_string(ErrorKind kind);

// Validation kinds are caused by bad input; everything else is a numerical
// failure inside the toolkit.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace avqc
