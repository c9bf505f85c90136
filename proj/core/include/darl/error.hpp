#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace darl {

/// Failure categories raised by the core library. The CLI maps each one
/// onto an exit code (see `exit_code_for`).
enum class ErrorCode {
  InsufficientSamples,
  InvalidBounds,
  DegenerateAbscissa,
  DegenerateVariance,
  UnsupportedSampleSize,
  ShapeMismatch,
  DivisionByZero,
  Singularity,
  InvalidCoefficient,
  MissingReference,
  SchemaError,
  OrderingError,
  ParseError,
  ValidationError,
  UnknownFixture,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by numerically degenerate input (zero variance,
/// division by zero, singular model terms) rather than malformed input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace darl
