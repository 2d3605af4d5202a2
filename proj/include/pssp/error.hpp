#pragma once

#include <stdexcept>
#include <string>

namespace pssp {

// Values are shared with the C API status codes in pssp.h; keep them in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kEmptyInstance = 2,
  kNonPositiveElement = 3,
  kTargetOutOfRange = 4,
  kCountOverflow = 5,
  kInstanceTooLarge = 6,
  kMissingTarget = 7,
  kInvalidParams = 8,
  kThetaOutOfRange = 9,
  kNoCrossover = 10,
  kUnknownPreset = 11,
  kParse = 12,
  kIo = 13,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pssp
