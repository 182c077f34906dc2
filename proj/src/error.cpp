#include "shorlab/error.hpp"

namespace shorlab {

const char* error_tag(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionLimit: return "dimension limit";
    case ErrorCode::kNotHermitian: return "not hermitian";
    case ErrorCode::kNotPsd: return "not PSD";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kNotCoprime: return "not coprime";
    case ErrorCode::kIndex: return "index";
    case ErrorCode::kNotNormalized: return "not normalized";
    case ErrorCode::kNotAState: return "not a state";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kExactModeRequired: return "exact mode required";
    case ErrorCode::kNotCompletelyPositive: return "not completely positive";
    case ErrorCode::kNoKrausForm: return "no finite Kraus form configured";
    case ErrorCode::kInvalidArgument: return "invalid argument";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(error_tag(code))
                                        : std::string(error_tag(code)) + ": " + detail),
      code_(code) {}

NotCoprimeError::NotCoprimeError(std::int64_t x, std::int64_t n, std::int64_t factor)
    : Error(ErrorCode::kNotCoprime,
            "gcd(" + std::to_string(x) + ", " + std::to_string(n) + ") = " +
                std::to_string(factor) + " is a factor of " + std::to_string(n)),
      factor_(factor) {}

}  // namespace shorlab
