#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hrc {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFiniteValue,
  kNonUnitGaze,
  kNonMonotoneTimestamp,
  kInvalidSkeleton,
  kParseError,
  kEmptyGeometry,
  kZeroTimeDelta,
  kInvalidCalibration,
  kInvalidModel,
  kInvalidConfig,
  kEmptyScenario,
  kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for errors caused by the content of a frame stream (as opposed to
// configuration or I/O problems).
bool is_frame_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& frame_index() const noexcept { return frame_index_; }

  // Copy of this error attributed to a frame; the message gains a
  // "frame N: " prefix.
  Error at_frame(std::size_t index) const;

 private:
  Error(ErrorCode code, const std::string& message, std::size_t frame_index);

  ErrorCode code_;
  std::optional<std::size_t> frame_index_;
};

}  // namespace hrc
