#include "pssp/error.hpp"

namespace pssp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyInstance: return "EmptyInstance";
    case ErrorCode::kNonPositiveElement: return "NonPositiveElement";
    case ErrorCode::kTargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::kCountOverflow: return "CountOverflow";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kMissingTarget: return "MissingTarget";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::kNoCrossover: return "NoCrossover";
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace pssp
