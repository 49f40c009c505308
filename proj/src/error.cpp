#include "selfsim/error.hpp"

namespace selfsim {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace selfsim
