#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hrc/types.hpp"

namespace hrc {

struct RobotModel;

// One limb capsule of the human body, spanning two named joints.
struct LimbSegment {
  std::string name;
  std::string from;
  std::string to;
  double radius = 0.05;
};

// The set of limb capsules used to represent a tracked human. Which joints
// exist and how they connect is configuration, not a property of any
// particular tracker.
class SkeletonTopology {
 public:
  // Throws Error(kInvalidSkeleton) for an empty segment list or a
  // non-positive radius.
  explicit SkeletonTopology(std::vector<LimbSegment> segments);

  // 14 capsules: head, torso, clavicles, upper/lower arms, hands,
  // upper/lower legs. Head and torso use 0.10 m radii, limbs 0.05 m.
  static std::shared_ptr<const SkeletonTopology> default_humanoid();

  const std::vector<LimbSegment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }

  // Index of the segment with the given name, if any.
  std::optional<std::size_t> find(const std::string& name) const;

 private:
  std::vector<LimbSegment> segments_;
};

struct HumanSkeleton {
  std::map<std::string, Vec3> joints;
  std::shared_ptr<const SkeletonTopology> topology;

  // Capsules in topology order. Throws Error(kInvalidSkeleton) when a
  // segment names a joint that is not present.
  std::vector<Capsule> capsules() const;
};

struct HeadPose {
  Vec3 position = Vec3::Zero();
  Vec3 gaze = Vec3::UnitX();

  // Horizontal gaze from a yaw angle about +z (pitch and roll zero).
  static HeadPose from_yaw(const Vec3& position, double yaw_rad);
};

struct RobotJointState {
  Eigen::VectorXd q;                  // rad
  std::optional<Eigen::VectorXd> qd;  // rad/s
};

struct SceneFrame {
  double t = 0.0;  // s
  HumanSkeleton human;
  HeadPose head;
  RobotJointState robot;
};

inline constexpr double kGazeUnitTolerance = 1e-9;

// Checks every per-frame invariant against the robot model and returns the
// same frame. Throws Error with kDimensionMismatch, kNonFiniteValue,
// kNonUnitGaze or kInvalidSkeleton. Idempotent.
const SceneFrame& validate_frame(const SceneFrame& frame, const RobotModel& model);

// Validates a stream frame by frame, additionally enforcing non-negative,
// strictly increasing timestamps (kNonMonotoneTimestamp). Errors carry the
// index of the offending frame.
class StreamValidator {
 public:
  explicit StreamValidator(const RobotModel& model) : model_(&model) {}

  const SceneFrame& accept(const SceneFrame& frame);
  std::size_t accepted() const noexcept { return count_; }

 private:
  const RobotModel* model_;
  std::optional<double> last_t_;
  std::size_t count_ = 0;
};

}  // namespace hrc
