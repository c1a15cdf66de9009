#pragma once

#include <filesystem>
#include <memory>
#include <string_view>

#include "hrc/hazard.hpp"
#include "hrc/kinematics.hpp"
#include "hrc/pipeline.hpp"
#include "hrc/scene.hpp"

namespace hrc {

// Robot model file:
//
//   name = "ur10"
//   [base]       xyz = [x, y, z] (m), rpy_deg = [roll, pitch, yaw]
//   [[joint]]    a (m), alpha_deg, d (m), theta_offset_deg    one table per joint
//   [safety]     v_min (m/s, default 0.25), v_max (m/s, default 1.0),
//                t_stop (s, required), d_reach (m, required)
//   [geometry]   link_radii = [m, ...]                         one per joint
//
// Unknown keys are rejected. Throws Error(kInvalidConfig) or
// Error(kInvalidModel).
RobotModel parse_robot_model(std::string_view text);
RobotModel load_robot_model(const std::filesystem::path& path);

struct AnalysisConfig {
  HazardConfig hazard;
  PipelineOptions pipeline;
  std::shared_ptr<const SkeletonTopology> skeleton = SkeletonTopology::default_humanoid();
};

// Analysis config file, every section optional:
//
//   [hazard]     epsilon_reach, beta, c_deg, omega = [w1, w2, w3],
//                d_min_policy = "static" | "per-frame", gate_mode =
//                "paper-strict" | "ungated", d_min (m, optional override)
//   [pipeline]   threads, velocity_smoothing_window (frames)
//   [[segment]]  name, from, to, radius (m); replaces the default humanoid
//
// Range checks that need the robot model happen in HazardConfig::validate.
AnalysisConfig parse_analysis_config(std::string_view text);
AnalysisConfig load_analysis_config(const std::filesystem::path& path);

}  // namespace hrc
