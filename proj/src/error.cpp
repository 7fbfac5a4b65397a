#include "tetra/error.hpp"

namespace tetra {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SignificantlyIndefinite: return "SignificantlyIndefinite";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::TriangularizationFailed: return "TriangularizationFailed";
    case ErrorCode::GramMismatch: return "GramMismatch";
    case ErrorCode::NotAContraction: return "NotAContraction";
    case ErrorCode::NotContractions: return "NotContractions";
    case ErrorCode::UnsolvableWithinTolerance: return "UnsolvableWithinTolerance";
    case ErrorCode::ConditionsViolated: return "ConditionsViolated";
    case ErrorCode::NotAProjection: return "NotAProjection";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::FundamentalConditionsFail: return "FundamentalConditionsFail";
    case ErrorCode::GConditionsFail: return "GConditionsFail";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::EmbeddingNotIsometric: return "EmbeddingNotIsometric";
    case ErrorCode::NotTriangularSymbol: return "NotTriangularSymbol";
    case ErrorCode::ConditionsFail: return "ConditionsFail";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace tetra
