#include "omega/error.hpp"

namespace omega {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyFacet: return "EmptyFacet";
    case ErrorCode::NonMaximalFacet: return "NonMaximalFacet";
    case ErrorCode::UncoveredVertex: return "UncoveredVertex";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::WeightNotPreserved: return "WeightNotPreserved";
    case ErrorCode::CollapseNotLinear: return "CollapseNotLinear";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::ActionNotFree: return "ActionNotFree";
    case ErrorCode::ActionNotBlending: return "ActionNotBlending";
    case ErrorCode::VertexActionNotFree: return "VertexActionNotFree";
    case ErrorCode::IncompatibleBlockSizes: return "IncompatibleBlockSizes";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotInvariantPolynomial: return "NotInvariantPolynomial";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::MissingCertificate: return "MissingCertificate";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::LocalsNotAligned: return "LocalsNotAligned";
    case ErrorCode::FactorNotInCone: return "FactorNotInCone";
    case ErrorCode::MissingSquareSplits: return "MissingSquareSplits";
    case ErrorCode::NotFactorizable: return "NotFactorizable";
    case ErrorCode::NotCanonicalForm: return "NotCanonicalForm";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_guard_error(ErrorCode code) {
  return code == ErrorCode::GroupTooLarge || code == ErrorCode::SearchSpaceTooLarge ||
         code == ErrorCode::SizeTooLarge;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace omega
