#include "spreadlab/error.hpp"

namespace spreadlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OutOfRegime: return "OutOfRegime";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ConstructionSizeMismatch: return "ConstructionSizeMismatch";
    case ErrorCode::UnverifiedSpread: return "UnverifiedSpread";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace spreadlab
