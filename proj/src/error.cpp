#include "expro/error.hpp"

namespace expro {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidRank: return "invalid-rank";
    case ErrorCode::kNotReduced: return "not-reduced";
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kNotCentral: return "not-central";
    case ErrorCode::kZeroDivisor: return "zero-divisor";
    case ErrorCode::kPoleAtPoint: return "pole-at-point";
    case ErrorCode::kNotWeightZero: return "not-weight-zero";
    case ErrorCode::kTruncationOverflow: return "truncation-overflow";
    case ErrorCode::kDecompositionFailure: return "decomposition-failure";
    case ErrorCode::kDegenerateCenter: return "degenerate-center";
    case ErrorCode::kDegenerateForm: return "degenerate-form";
    case ErrorCode::kInvalidT: return "invalid-T";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace expro
