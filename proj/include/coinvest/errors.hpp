#pragma once

#include <stdexcept>
#include <string>

namespace coinvest {

enum class ErrorCode {
  kUnknownNode,
  kUnknownEdge,
  kRebuildExisting,
  kFrequencyOverflow,
  kBigMViolation,
  kInvalidBounds,
  kUnreachable,
  kTooLarge,
  kNoAgreement,
  kZeroCoinvestment,
  kZeroRoadCapacity,
  kInfeasible,
  kParseError,
  kConfigError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coinvest
