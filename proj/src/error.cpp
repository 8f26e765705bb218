#include "avqc/error.hpp"

namespace avqc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidChannel: return "InvalidChannel";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BlocklengthTooLarge: return "BlocklengthTooLarge";
    case ErrorKind::ProbeDimensionMismatch: return "ProbeDimensionMismatch";
    case ErrorKind::RuleNotApplicable: return "RuleNotApplicable";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownSubcommand: return "UnknownSubcommand";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  return kind != ErrorKind::NumericalFailure;
}

}  // namespace avqc
