#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shorlab {

enum class ErrorCode {
  kDimensionLimit,
  kNotHermitian,
  kNotPsd,
  kShape,
  kNotCoprime,
  kIndex,
  kNotNormalized,
  kNotAState,
  kUndefined,
  kExactModeRequired,
  kNotCompletelyPositive,
  kNoKrausForm,
  kInvalidArgument,
};

/// Base error for every failure raised by the library. The message always
/// starts with the short tag for its code ("dimension limit", "not PSD", ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by order finding when gcd(x, N) != 1; the gcd is a classical factor of N.
class NotCoprimeError : public Error {
 public:
  NotCoprimeError(std::int64_t x, std::int64_t n, std::int64_t factor);

  std::int64_t factor() const noexcept { return factor_; }

 private:
  std::int64_t factor_;
};

const char* error_tag(ErrorCode code) noexcept;

}  // namespace shorlab
