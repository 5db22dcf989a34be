#include "opmeans/error.hpp"

namespace opmeans {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SpectrumNotEnclosed: return "SpectrumNotEnclosed";
    case ErrorCode::ResolventSingular: return "ResolventSingular";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ZeroDenominatorWeight: return "ZeroDenominatorWeight";
    case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case ErrorCode::VariantPreconditionViolated: return "VariantPreconditionViolated";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::UnknownLawId: return "UnknownLawId";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace opmeans
