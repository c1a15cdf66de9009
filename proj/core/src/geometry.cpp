#include "hrc/geometry.hpp"

#include <algorithm>
#include <limits>

#include "hrc/error.hpp"

namespace hrc {

// Closest points between two segments after Ericson, "Real-Time Collision
// Detection", 5.1.9, with degenerate segments handled explicitly.
SegmentDistance segment_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                                         const Vec3& b1) {
  constexpr double kEps = 1e-300;
  const Vec3 d1 = a1 - a0;
  const Vec3 d2 = b1 - b0;
  const Vec3 r = a0 - b0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);

  double s = 0.0;
  double t = 0.0;
  if (a <= kEps && e <= kEps) {
    // both points
  } else if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      // Parallel segments have denom == 0; any s works, pick 0.
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }

  SegmentDistance out;
  out.on_first = a0 + s * d1;
  out.on_second = b0 + t * d2;
  out.distance = (out.on_first - out.on_second).norm();
  return out;
}

double capsule_distance(const Capsule& first, const Capsule& second) {
  const auto sd = segment_segment_distance(first.a, first.b, second.a, second.b);
  return std::max(0.0, sd.distance - first.radius - second.radius);
}

ProximityResult min_human_robot_distance(std::span<const Capsule> human,
                                         std::span<const Capsule> links) {
  if (human.empty() || links.empty()) {
    throw Error(ErrorCode::kEmptyGeometry,
                human.empty() ? "no human capsules" : "no robot link capsules");
  }
  ProximityResult best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t li = 0; li < links.size(); ++li) {
    const auto& link = links[li];
    for (std::size_t si = 0; si < human.size(); ++si) {
      const auto& limb = human[si];
      const auto sd = segment_segment_distance(link.a, link.b, limb.a, limb.b);
      const double d = std::max(0.0, sd.distance - link.radius - limb.radius);
      if (d < best.distance) {
        best.distance = d;
        best.p_robot = sd.on_first;
        best.p_human = sd.on_second;
        best.link = li;
        best.segment = si;
      }
    }
  }
  return best;
}

ProximityResult min_human_robot_distance(const HumanSkeleton& human,
                                         std::span<const Capsule> links) {
  const auto capsules = human.capsules();
  return min_human_robot_distance(std::span<const Capsule>(capsules), links);
}

std::optional<Vec3> worst_case_direction(const ProximityResult& prox) {
  const Vec3 diff = prox.p_human - prox.p_robot;
  const double n = diff.norm();
  if (!(n >= kDirectionEpsilon)) return std::nullopt;
  return diff / n;
}

}  // namespace hrc
