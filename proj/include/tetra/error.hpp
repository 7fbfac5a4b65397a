#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  SignificantlyIndefinite,
  NotCommuting,
  TriangularizationFailed,
  GramMismatch,
  NotAContraction,
  NotContractions,
  UnsolvableWithinTolerance,
  ConditionsViolated,
  NotAProjection,
  NotUnitary,
  FundamentalConditionsFail,
  GConditionsFail,
  NotPure,
  VerificationFailed,
  EmbeddingNotIsometric,
  NotTriangularSymbol,
  ConditionsFail,
  SchemaError,
};

const char* to_string(ErrorCode code);

/// Exception type thrown by every tetra routine. The code identifies the
/// failed contract; what() carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tetra
