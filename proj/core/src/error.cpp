#include "hrc/error.hpp"

namespace hrc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kNonUnitGaze: return "NonUnitGaze";
    case ErrorCode::kNonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case ErrorCode::kInvalidSkeleton: return "InvalidSkeleton";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyGeometry: return "EmptyGeometry";
    case ErrorCode::kZeroTimeDelta: return "ZeroTimeDelta";
    case ErrorCode::kInvalidCalibration: return "InvalidCalibration";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptyScenario: return "EmptyScenario";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool is_frame_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNonFiniteValue:
    case ErrorCode::kNonUnitGaze:
    case ErrorCode::kNonMonotoneTimestamp:
    case ErrorCode::kInvalidSkeleton:
    case ErrorCode::kParseError:
    case ErrorCode::kEmptyGeometry:
    case ErrorCode::kZeroTimeDelta:
    case ErrorCode::kEmptyScenario:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t frame_index)
    : std::runtime_error(message), code_(code), frame_index_(frame_index) {}

Error Error::at_frame(std::size_t index) const {
  if (frame_index_) return *this;
  return Error(code_, "frame " + std::to_string(index) + ": " + what(), index);
}

}  // namespace hrc
