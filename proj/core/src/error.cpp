#include "darl/error.hpp"

namespace darl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::DegenerateAbscissa: return "DegenerateAbscissa";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::UnsupportedSampleSize: return "UnsupportedSampleSize";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Singularity: return "Singularity";
    case ErrorCode::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorCode::MissingReference: return "MissingReference";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::OrderingError: return "OrderingError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateAbscissa:
    case ErrorCode::DegenerateVariance:
    case ErrorCode::DivisionByZero:
    case ErrorCode::Singularity:
    case ErrorCode::InvalidCoefficient:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace darl
