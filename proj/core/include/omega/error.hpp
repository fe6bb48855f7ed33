#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omega {

enum class ErrorCode {
  EmptyFacet,
  NonMaximalFacet,
  UncoveredVertex,
  DivisibilityViolation,
  VertexOutOfRange,
  InvalidSize,
  WeightNotPreserved,
  CollapseNotLinear,
  InvalidPermutation,
  GroupTooLarge,
  SearchSpaceTooLarge,
  SizeTooLarge,
  NotConnected,
  ActionNotFree,
  ActionNotBlending,
  VertexActionNotFree,
  IncompatibleBlockSizes,
  NotInvariant,
  NotInvariantPolynomial,
  NotBipartite,
  MissingCertificate,
  DimensionMismatch,
  NotPSD,
  LocalsNotAligned,
  FactorNotInCone,
  MissingSquareSplits,
  NotFactorizable,
  NotCanonicalForm,
  NotHomogeneous,
  NotNormalized,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Guard errors signal that a configured search or size limit was exceeded.
bool is_guard_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace omega
