#pragma once

#include <Eigen/Core>

namespace hrc {

// Positions in meters, velocities in m/s, directions dimensionless.
using Vec3 = Eigen::Vector3d;

// Line segment [a, b] swept by a sphere of the given radius. a == b is a
// sphere.
struct Capsule {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  double radius = 0.0;
};

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace hrc
