#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "hrc/scene.hpp"
#include "hrc/types.hpp"

namespace hrc {

struct SegmentDistance {
  double distance = 0.0;
  Vec3 on_first = Vec3::Zero();
  Vec3 on_second = Vec3::Zero();
};

// Global minimum distance between segments [a0, a1] and [b0, b1] and the
// points realizing it. Zero-length segments are treated as points.
SegmentDistance segment_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                                         const Vec3& b1);

// Surface-to-surface distance, clamped at zero for overlapping capsules.
double capsule_distance(const Capsule& first, const Capsule& second);

struct ProximityResult {
  double distance = 0.0;  // surface to surface, >= 0
  Vec3 p_robot = Vec3::Zero();  // on the robot capsule axis
  Vec3 p_human = Vec3::Zero();  // on the human capsule axis
  std::size_t link = 0;
  std::size_t segment = 0;
};

// Minimum surface distance over every (link, segment) pair. Ties keep the
// lowest (link, segment) index. Throws Error(kEmptyGeometry) if either side
// is empty.
ProximityResult min_human_robot_distance(std::span<const Capsule> human,
                                         std::span<const Capsule> links);
ProximityResult min_human_robot_distance(const HumanSkeleton& human,
                                         std::span<const Capsule> links);

inline constexpr double kDirectionEpsilon = 1e-9;

// Unit vector from the robot's closest point toward the human's. Empty when
// the two points coincide (contact singularity).
std::optional<Vec3> worst_case_direction(const ProximityResult& prox);

}  // namespace hrc
