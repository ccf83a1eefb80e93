#include "keller/error.hpp"

namespace keller {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EvaluationOverflow: return "EvaluationOverflow";
    case ErrorCode::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorCode::NotKeller: return "NotKeller";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::DegenerateAffine: return "DegenerateAffine";
    case ErrorCode::BothConstantInY: return "BothConstantInY";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ResultantVanishes: return "ResultantVanishes";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::BothConstant: return "BothConstant";
    case ErrorCode::NoPositiveValuation: return "NoPositiveValuation";
    case ErrorCode::IdenticallyZero: return "IdenticallyZero";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DivisionByZeroDistance: return "DivisionByZeroDistance";
    case ErrorCode::BoxOverflow: return "BoxOverflow";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::DuplicateName: return "DuplicateName";
  }
  return "Unknown";
}

}  // namespace keller
