#include "skewcalc/error.hpp"

namespace skewcalc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::NegativeExponent: return "NEGATIVE_EXPONENT";
    case ErrorCode::AlgebraMismatch: return "ALGEBRA_MISMATCH";
    case ErrorCode::InconsistentRules: return "INCONSISTENT_RULES";
    case ErrorCode::BadSigma: return "BAD_SIGMA";
    case ErrorCode::BadDelta: return "BAD_DELTA";
    case ErrorCode::BadInverse: return "BAD_INVERSE";
    case ErrorCode::TailDegree: return "TAIL_DEGREE";
    case ErrorCode::BadParams: return "BAD_PARAMS";
    case ErrorCode::UnsupportedGwa: return "UNSUPPORTED_GWA";
    case ErrorCode::NotADomain: return "NOT_A_DOMAIN";
    case ErrorCode::ResourceLimit: return "RESOURCE_LIMIT";
    case ErrorCode::InsufficientData: return "INSUFFICIENT_DATA";
    case ErrorCode::MissingEvidence: return "MISSING_EVIDENCE";
    case ErrorCode::FactorizationIncomplete: return "FACTORIZATION_INCOMPLETE";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::Usage: return "USAGE";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage:
      return 1;
    case ErrorCode::SyntaxError:
      return 2;
    case ErrorCode::FieldMismatch:
    case ErrorCode::NegativeExponent:
    case ErrorCode::AlgebraMismatch:
    case ErrorCode::InconsistentRules:
    case ErrorCode::BadSigma:
    case ErrorCode::BadDelta:
    case ErrorCode::BadInverse:
    case ErrorCode::TailDegree:
    case ErrorCode::BadParams:
    case ErrorCode::UnsupportedGwa:
    case ErrorCode::NotADomain:
    case ErrorCode::ValidationError:
    case ErrorCode::DivisionByZero:
    case ErrorCode::InsufficientData:
    case ErrorCode::MissingEvidence:
      return 3;
    case ErrorCode::ResourceLimit:
      return 4;
    case ErrorCode::FactorizationIncomplete:
    case ErrorCode::Internal:
      return 5;
  }
  return 5;
}

}  // namespace skewcalc
