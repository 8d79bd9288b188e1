#pragma once

#include <stdexcept>
#include <string>

namespace expro {

enum class ErrorCode {
  kInvalidRank = 1,
  kNotReduced,
  kInvalidOrder,
  kNotCentral,
  kZeroDivisor,
  kPoleAtPoint,
  kNotWeightZero,
  kTruncationOverflow,
  kDecompositionFailure,
  kDegenerateCenter,
  kDegenerateForm,
  kInvalidT,
  kParse,
  kInvalidArgument,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace expro
