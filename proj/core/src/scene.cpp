#include "hrc/scene.hpp"

#include <cmath>
#include <sstream>

#include "hrc/error.hpp"
#include "hrc/kinematics.hpp"

namespace hrc {

SkeletonTopology::SkeletonTopology(std::vector<LimbSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw Error(ErrorCode::kInvalidSkeleton, "skeleton topology has no segments");
  }
  for (const auto& s : segments_) {
    if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
      throw Error(ErrorCode::kInvalidSkeleton,
                  "segment '" + s.name + "' has non-positive radius");
    }
    if (s.from.empty() || s.to.empty()) {
      throw Error(ErrorCode::kInvalidSkeleton, "segment '" + s.name + "' has an empty joint name");
    }
  }
}

std::shared_ptr<const SkeletonTopology> SkeletonTopology::default_humanoid() {
  static const auto topology = std::make_shared<const SkeletonTopology>(std::vector<LimbSegment>{
      {"head", "neck", "head", 0.10},
      {"torso", "neck", "pelvis", 0.10},
      {"l_clavicle", "neck", "l_shoulder", 0.05},
      {"r_clavicle", "neck", "r_shoulder", 0.05},
      {"l_upper_arm", "l_shoulder", "l_elbow", 0.05},
      {"r_upper_arm", "r_shoulder", "r_elbow", 0.05},
      {"l_forearm", "l_elbow", "l_wrist", 0.05},
      {"r_forearm", "r_elbow", "r_wrist", 0.05},
      {"l_hand", "l_wrist", "l_hand", 0.05},
      {"r_hand", "r_wrist", "r_hand", 0.05},
      {"l_thigh", "l_hip", "l_knee", 0.05},
      {"r_thigh", "r_hip", "r_knee", 0.05},
      {"l_shin", "l_knee", "l_ankle", 0.05},
      {"r_shin", "r_knee", "r_ankle", 0.05},
  });
  return topology;
}

std::optional<std::size_t> SkeletonTopology::find(const std::string& name) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<Capsule> HumanSkeleton::capsules() const {
  if (!topology) throw Error(ErrorCode::kInvalidSkeleton, "skeleton has no topology");
  std::vector<Capsule> out;
  out.reserve(topology->size());
  for (const auto& s : topology->segments()) {
    const auto a = joints.find(s.from);
    const auto b = joints.find(s.to);
    if (a == joints.end() || b == joints.end()) {
      const auto& missing = a == joints.end() ? s.from : s.to;
      throw Error(ErrorCode::kInvalidSkeleton,
                  "segment '" + s.name + "' references missing joint '" + missing + "'");
    }
    out.push_back({a->second, b->second, s.radius});
  }
  return out;
}

HeadPose HeadPose::from_yaw(const Vec3& position, double yaw_rad) {
  return {position, Vec3(std::cos(yaw_rad), std::sin(yaw_rad), 0.0)};
}

namespace {

void require_finite(const Vec3& v, const std::string& what) {
  if (!v.allFinite()) throw Error(ErrorCode::kNonFiniteValue, what + " is not finite");
}

}  // namespace

const SceneFrame& validate_frame(const SceneFrame& frame, const RobotModel& model) {
  if (!std::isfinite(frame.t)) throw Error(ErrorCode::kNonFiniteValue, "timestamp is not finite");
  if (frame.t < 0.0) {
    throw Error(ErrorCode::kNonMonotoneTimestamp, "timestamp must be non-negative");
  }

  const auto& human = frame.human;
  if (!human.topology || human.topology->size() == 0) {
    throw Error(ErrorCode::kInvalidSkeleton, "skeleton has no segments");
  }
  for (const auto& [name, p] : human.joints) require_finite(p, "joint '" + name + "'");
  for (const auto& s : human.topology->segments()) {
    for (const auto* joint : {&s.from, &s.to}) {
      if (!human.joints.contains(*joint)) {
        throw Error(ErrorCode::kInvalidSkeleton,
                    "segment '" + s.name + "' references missing joint '" + *joint + "'");
      }
    }
  }

  require_finite(frame.head.position, "head position");
  require_finite(frame.head.gaze, "gaze");
  const double gaze_norm = frame.head.gaze.norm();
  if (std::abs(gaze_norm - 1.0) > kGazeUnitTolerance) {
    std::ostringstream msg;
    msg << "gaze is not a unit vector (norm " << gaze_norm << ")";
    throw Error(ErrorCode::kNonUnitGaze, msg.str());
  }

  const auto n = model.joint_count();
  const auto& robot = frame.robot;
  if (static_cast<std::size_t>(robot.q.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "q has " + std::to_string(robot.q.size()) +
                                                   " entries, robot model has " +
                                                   std::to_string(n) + " joints");
  }
  if (!robot.q.allFinite()) throw Error(ErrorCode::kNonFiniteValue, "q is not finite");
  if (robot.qd) {
    if (robot.qd->size() != robot.q.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "qd has " + std::to_string(robot.qd->size()) +
                                                     " entries, q has " +
                                                     std::to_string(robot.q.size()));
    }
    if (!robot.qd->allFinite()) throw Error(ErrorCode::kNonFiniteValue, "qd is not finite");
  }
  return frame;
}

const SceneFrame& StreamValidator::accept(const SceneFrame& frame) {
  try {
    validate_frame(frame, *model_);
    if (last_t_ && !(frame.t > *last_t_)) {
      std::ostringstream msg;
      msg << "timestamp " << frame.t << " does not follow " << *last_t_;
      throw Error(ErrorCode::kNonMonotoneTimestamp, msg.str());
    }
  } catch (const Error& e) {
    throw e.at_frame(count_);
  }
  last_t_ = frame.t;
  ++count_;
  return frame;
}

}  // namespace hrc
