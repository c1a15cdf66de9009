#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "hrc/scene.hpp"
#include "hrc/types.hpp"

namespace hrc {

// Standard Denavit-Hartenberg parameters of one revolute joint:
// T = Rz(theta + theta_offset) * Tz(d) * Tx(a) * Rx(alpha).
struct DhJoint {
  double a = 0.0;             // m
  double alpha = 0.0;         // rad
  double d = 0.0;             // m
  double theta_offset = 0.0;  // rad
};

struct SafetyLimits {
  double v_min = 0.25;  // m/s, velocity below which the robot is considered harmless
  double v_max = 1.0;   // m/s
  double t_stop = 0.0;  // s, no default
  double d_reach = 0.0; // m, no default
};

struct RobotModel {
  std::string name;
  std::vector<DhJoint> joints;
  std::vector<double> link_radii;  // one per link, m
  Eigen::Isometry3d base_pose = Eigen::Isometry3d::Identity();
  SafetyLimits safety;

  std::size_t joint_count() const noexcept { return joints.size(); }

  // Throws Error(kInvalidModel) unless v_min < v_max, t_stop > 0,
  // d_reach > 0, at least one joint and one non-negative radius per link.
  void validate() const;
};

struct RobotPose {
  std::vector<Eigen::Isometry3d> joint_frames;  // base first, then one per joint
  std::vector<Capsule> link_capsules;
  Vec3 ee_position = Vec3::Zero();
};

using Jacobian = Eigen::Matrix<double, 3, Eigen::Dynamic>;

// Throws Error(kDimensionMismatch) if q does not match the joint count.
RobotPose forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

// Linear-velocity Jacobian of the end effector; column i is z_i x (p_ee - p_i)
// with z_i, p_i taken from the frame the joint rotates in.
Jacobian jacobian(const RobotModel& model, const Eigen::VectorXd& q);

struct CartesianVelocity {
  Vec3 v = Vec3::Zero();  // m/s
  bool estimated = false;
};

// End-effector velocity. Uses J(q) qd when joint velocities are present,
// otherwise a backward difference against prev, otherwise zero. The last
// two are flagged as estimated. Throws Error(kZeroTimeDelta) when the
// difference would divide by a zero interval.
CartesianVelocity cartesian_velocity(const RobotModel& model, const SceneFrame& frame,
                                     const SceneFrame* prev);

}  // namespace hrc
