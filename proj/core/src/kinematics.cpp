#include "hrc/kinematics.hpp"

#include <cmath>

#include "hrc/error.hpp"

namespace hrc {

void RobotModel::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidModel, msg); };
  if (joints.empty()) fail("robot model has no joints");
  if (link_radii.size() != joints.size()) {
    fail("robot model has " + std::to_string(link_radii.size()) + " link radii for " +
         std::to_string(joints.size()) + " joints");
  }
  for (const auto& j : joints) {
    if (!std::isfinite(j.a) || !std::isfinite(j.alpha) || !std::isfinite(j.d) ||
        !std::isfinite(j.theta_offset)) {
      fail("non-finite DH parameter");
    }
  }
  for (double r : link_radii) {
    if (!(r >= 0.0) || !std::isfinite(r)) fail("link radius must be finite and >= 0");
  }
  const auto& s = safety;
  if (!(s.v_min >= 0.0)) fail("v_min must be >= 0");
  if (!(s.v_min < s.v_max) || !std::isfinite(s.v_max)) fail("v_min must be below v_max");
  if (!(s.t_stop > 0.0) || !std::isfinite(s.t_stop)) fail("t_stop must be > 0");
  if (!(s.d_reach > 0.0) || !std::isfinite(s.d_reach)) fail("d_reach must be > 0");
}

namespace {

Eigen::Isometry3d dh_transform(const DhJoint& j, double q) {
  const double theta = q + j.theta_offset;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(j.alpha), sa = std::sin(j.alpha);
  Eigen::Matrix4d m;
  m << ct, -st * ca, st * sa, j.a * ct,
       st, ct * ca, -ct * sa, j.a * st,
       0.0, sa, ca, j.d,
       0.0, 0.0, 0.0, 1.0;
  return Eigen::Isometry3d(m);
}

void check_dimension(const RobotModel& model, const Eigen::VectorXd& q) {
  if (static_cast<std::size_t>(q.size()) != model.joint_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "q has " + std::to_string(q.size()) + " entries, robot model has " +
                    std::to_string(model.joint_count()) + " joints");
  }
}

}  // namespace

RobotPose forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  check_dimension(model, q);
  const auto n = model.joint_count();
  RobotPose pose;
  pose.joint_frames.reserve(n + 1);
  pose.link_capsules.reserve(n);
  pose.joint_frames.push_back(model.base_pose);
  for (std::size_t i = 0; i < n; ++i) {
    pose.joint_frames.push_back(pose.joint_frames.back() *
                                dh_transform(model.joints[i], q[static_cast<Eigen::Index>(i)]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    pose.link_capsules.push_back({pose.joint_frames[i].translation(),
                                  pose.joint_frames[i + 1].translation(), model.link_radii[i]});
  }
  pose.ee_position = pose.joint_frames.back().translation();
  return pose;
}

Jacobian jacobian(const RobotModel& model, const Eigen::VectorXd& q) {
  const auto pose = forward_kinematics(model, q);
  const auto n = model.joint_count();
  Jacobian jac(3, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& frame = pose.joint_frames[i];
    const Vec3 z = frame.linear().col(2);
    jac.col(static_cast<Eigen::Index>(i)) = z.cross(pose.ee_position - frame.translation());
  }
  return jac;
}

CartesianVelocity cartesian_velocity(const RobotModel& model, const SceneFrame& frame,
                                     const SceneFrame* prev) {
  if (frame.robot.qd) {
    if (frame.robot.qd->size() != frame.robot.q.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "qd does not match q");
    }
    return {jacobian(model, frame.robot.q) * *frame.robot.qd, false};
  }
  if (prev == nullptr) return {Vec3::Zero(), true};

  const double dt = frame.t - prev->t;
  if (dt == 0.0) throw Error(ErrorCode::kZeroTimeDelta, "velocity difference over zero interval");
  const Vec3 p = forward_kinematics(model, frame.robot.q).ee_position;
  const Vec3 p_prev = forward_kinematics(model, prev->robot.q).ee_position;
  return {(p - p_prev) / dt, true};
}

}  // namespace hrc
