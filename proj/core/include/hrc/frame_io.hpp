#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrc/scene.hpp"

namespace hrc {

// JSON Lines frame format, one object per line:
//   {"t": s, "human": {"joints": {"name": [x,y,z], ...}},
//    "head": {"position": [x,y,z], "gaze": [x,y,z]}   or   {"position": [...], "yaw_deg": deg},
//    "robot": {"q": [rad...], "qd": [rad/s...]}}
// "qd" is optional. Throws Error(kParseError) on malformed input.
SceneFrame parse_frame(std::string_view line, std::shared_ptr<const SkeletonTopology> topology);

// Single line, no trailing newline. Gaze is always written as a vector.
std::string format_frame(const SceneFrame& frame);

// Reads frames one at a time; blank lines are skipped. Parse errors carry the
// frame index.
class FrameReader {
 public:
  FrameReader(std::istream& in, std::shared_ptr<const SkeletonTopology> topology);

  std::optional<SceneFrame> next();
  std::size_t frames_read() const noexcept { return index_; }

 private:
  std::istream* in_;
  std::shared_ptr<const SkeletonTopology> topology_;
  std::size_t index_ = 0;
};

std::vector<SceneFrame> read_frames(std::istream& in,
                                    std::shared_ptr<const SkeletonTopology> topology);
void write_frames(std::ostream& out, std::span<const SceneFrame> frames);

}  // namespace hrc
