#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "hrc/config.hpp"
#include "hrc/kinematics.hpp"

namespace fixtures {

inline std::filesystem::path config_dir() { return HRC_CONFIG_DIR; }

inline const hrc::RobotModel& ur10() {
  static const hrc::RobotModel model = hrc::load_robot_model(config_dir() / "ur10.toml");
  return model;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hrc_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures

#include "hrc/scene.hpp"

namespace fixtures {

// Upright default-humanoid skeleton with the pelvis above `root`, facing -x.
inline hrc::HumanSkeleton standing_human(const hrc::Vec3& root) {
  hrc::HumanSkeleton h;
  h.topology = hrc::SkeletonTopology::default_humanoid();
  auto put = [&](const std::string& name, double y, double z) { h.joints[name] = root + hrc::Vec3(0.0, y, z); };
  put("pelvis", 0.0, 1.0);
  put("neck", 0.0, 1.5);
  put("head", 0.0, 1.7);
  for (const auto& [p, s] : {std::pair{"l_", 1.0}, std::pair{"r_", -1.0}}) {
    const std::string pre = p;
    put(pre + "shoulder", 0.2 * s, 1.45);
    put(pre + "elbow", 0.22 * s, 1.15);
    put(pre + "wrist", 0.22 * s, 0.9);
    put(pre + "hand", 0.22 * s, 0.82);
    put(pre + "hip", 0.1 * s, 0.95);
    put(pre + "knee", 0.1 * s, 0.5);
    put(pre + "ankle", 0.1 * s, 0.08);
  }
  return h;
}

inline hrc::SceneFrame make_frame(double t, const hrc::Vec3& root, const hrc::RobotModel& model) {
  hrc::SceneFrame f;
  f.t = t;
  f.human = standing_human(root);
  f.head = hrc::HeadPose::from_yaw(root + hrc::Vec3(0.0, 0.0, 1.6), 3.141592653589793);
  f.robot.q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.joint_count()));
  f.robot.qd = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.joint_count()));
  return f;
}

}  // namespace fixtures
