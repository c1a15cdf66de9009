#include "hrc/simulator.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <cmath>
#include <numbers>
#include <random>

#include "hrc/error.hpp"
#include "hrc/hazard.hpp"

namespace hrc {

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::kHandover: return "handover";
    case ScenarioKind::kCollaboration: return "collaboration";
    case ScenarioKind::kCoexistence: return "coexistence";
  }
  return "handover";
}

std::string_view to_string(Variant variant) noexcept {
  return variant == Variant::kDangerous ? "dangerous" : "non-dangerous";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view text) noexcept {
  for (auto k : {ScenarioKind::kHandover, ScenarioKind::kCollaboration, ScenarioKind::kCoexistence}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view text) noexcept {
  if (text == "dangerous") return Variant::kDangerous;
  if (text == "non-dangerous") return Variant::kNonDangerous;
  return std::nullopt;
}

void ScenarioSpec::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kInvalidConfig, "scenario duration must be > 0");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kInvalidConfig, "scenario rate must be > 0");
  }
}

std::size_t ScenarioSpec::frame_count() const {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(duration * rate)));
}

namespace {

using Joints6 = Eigen::Matrix<double, 6, 1>;

// Minimum-jerk blend 0 -> 1 over [t0, t1] and its time derivative.
double blend(double t, double t0, double t1) {
  const double s = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
  return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double blend_rate(double t, double t0, double t1) {
  if (t <= t0 || t >= t1) return 0.0;
  const double s = (t - t0) / (t1 - t0);
  return 30.0 * s * s * (1.0 - s) * (1.0 - s) / (t1 - t0);
}

Joints6 joints_deg(double a, double b, double c, double d, double e, double f) {
  Joints6 q;
  q << a, b, c, d, e, f;
  return q * kDegToRad;
}

struct Keyframe {
  double t;
  Joints6 q;
};

// Piecewise minimum-jerk joint trajectory through keyframes; periodic with
// the last keyframe's time, which must repeat the first pose.
class JointScript {
 public:
  explicit JointScript(std::vector<Keyframe> keys) : keys_(std::move(keys)) {}

  double period() const { return keys_.back().t; }

  void sample(double t_local, Eigen::VectorXd& q, Eigen::VectorXd& qd) const {
    for (std::size_t i = 0; i + 1 < keys_.size(); ++i) {
      const auto& k0 = keys_[i];
      const auto& k1 = keys_[i + 1];
      if (t_local < k1.t || i + 2 == keys_.size()) {
        const Joints6 delta = k1.q - k0.q;
        q = k0.q + blend(t_local, k0.t, k1.t) * delta;
        qd = blend_rate(t_local, k0.t, k1.t) * delta;
        return;
      }
    }
  }

 private:
  std::vector<Keyframe> keys_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Band-limited noise: sum of three sinusoids with seeded frequencies and
// phases, bounded by amplitude.
class SmoothNoise {
 public:
  SmoothNoise(std::uint64_t seed, double amplitude) : amplitude_(amplitude) {
    std::mt19937_64 gen(splitmix64(seed));
    auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (auto& c : comps_) {
      c.freq = 0.1 + 0.5 * uniform();
      c.phase = 2.0 * std::numbers::pi * uniform();
    }
  }

  double operator()(double t) const {
    double sum = 0.0;
    for (const auto& c : comps_) sum += std::sin(2.0 * std::numbers::pi * c.freq * t + c.phase);
    return amplitude_ * sum / static_cast<double>(comps_.size());
  }

 private:
  struct Component {
    double freq = 0.0;
    double phase = 0.0;
  };
  double amplitude_;
  std::array<Component, 3> comps_{};
};

std::uint64_t stream_seed(std::uint64_t seed, ScenarioKind kind, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(kind) * 0x100 + salt));
}

// Where the human is and what they do at one instant.
struct HumanState {
  Vec3 root = Vec3::Zero();      // ground point under the pelvis
  double reach = 0.0;            // right-arm extension toward reach_target, 0..1
  Vec3 reach_target = Vec3::Zero();
  double gaze_offset = 0.0;      // rad, yaw away from the end effector
};

// Standing humanoid facing `forward` (horizontal unit vector).
std::map<std::string, Vec3> build_joints(const HumanState& s, const Vec3& forward, const Vec3& sway) {
  const Vec3 up = Vec3::UnitZ();
  const Vec3 left = up.cross(forward);
  const Vec3 base = s.root + sway;
  auto at = [&](double side, double height) { return Vec3(base + side * left + height * up); };

  std::map<std::string, Vec3> j;
  j["pelvis"] = at(0.0, 1.0);
  j["neck"] = at(0.0, 1.5);
  j["head"] = at(0.0, 1.68);
  for (const auto& [prefix, side] : {std::pair{"l_", 1.0}, std::pair{"r_", -1.0}}) {
    const std::string p = prefix;
    j[p + "shoulder"] = at(0.19 * side, 1.45);
    j[p + "elbow"] = at(0.21 * side, 1.17);
    j[p + "wrist"] = at(0.21 * side, 0.92);
    j[p + "hand"] = at(0.21 * side, 0.84);
    j[p + "hip"] = at(0.10 * side, 0.95);
    j[p + "knee"] = at(0.10 * side, 0.52);
    j[p + "ankle"] = at(0.10 * side, 0.08);
  }

  if (s.reach > 0.0) {
    const Vec3 shoulder = j["r_shoulder"];
    const Vec3 target = s.reach_target + sway;
    const Vec3 u = (target - shoulder).normalized();
    const double len = (target - shoulder).norm();
    const Vec3 elbow = shoulder + 0.45 * len * u;
    const Vec3 wrist = target - 0.08 * u;
    j["r_elbow"] += s.reach * (elbow - j["r_elbow"]);
    j["r_wrist"] += s.reach * (wrist - j["r_wrist"]);
    j["r_hand"] += s.reach * (target - j["r_hand"]);
  }
  return j;
}

Vec3 horizontal(const Vec3& v) { return {v.x(), v.y(), 0.0}; }

// Placement shared by all scripts, derived from the robot's geometry.
struct Layout {
  Vec3 toward_work;  // horizontal unit vector from the robot base toward the work point
  Vec3 facing;       // human forward direction, toward the robot
  Vec3 left;
  Vec3 work_point;   // end effector at the work pose
};

Layout make_layout(const RobotModel& model, const Joints6& work_pose) {
  Layout l;
  l.work_point = forward_kinematics(model, work_pose).ee_position;
  const Vec3 base = model.base_pose.translation();
  l.toward_work = horizontal(l.work_point - base).normalized();
  l.facing = -l.toward_work;
  l.left = Vec3::UnitZ().cross(l.facing);
  return l;
}

// Ground point that puts the extended right hand on `target`.
Vec3 stance_for(const Layout& l, const Vec3& target) {
  return horizontal(target) - 0.6 * l.facing + 0.19 * l.left;
}

struct Script {
  JointScript robot;
  double period;
  // (t_local, t_absolute) -> human state; t_absolute drives the noise.
  std::function<HumanState(double)> human;
};

const Joints6 kHome = joints_deg(180, -120, 100, -70, -90, 0);
const Joints6 kHandover = joints_deg(180, -60, 60, -90, -90, 0);
const Joints6 kPlace = joints_deg(140, -75, 80, -95, -90, 0);

Script handover_script(const RobotModel& model, Variant variant, const SmoothNoise& gaze_noise) {
  JointScript robot({{0.0, kHome},
                     {2.5, kHome},
                     {4.3, kHandover},
                     {6.0, kHandover},
                     {7.8, kHome},
                     {10.0, kHome}});
  const Layout l = make_layout(model, kHandover);
  const Vec3 target = l.work_point + 0.03 * l.toward_work;
  const Vec3 stance = stance_for(l, target);
  const bool dangerous = variant == Variant::kDangerous;

  // Away from the shared stance only while the robot rests: the
  // non-dangerous operator waits outside the reach, the dangerous one right
  // next to the arm.
  const Vec3 offset = dangerous ? Vec3(-0.75 * l.toward_work) : Vec3(1.5 * l.toward_work);
  const double arrive0 = dangerous ? 1.5 : 0.3;
  const double arrive1 = 2.3;
  const double leave0 = 8.0;
  const double leave1 = dangerous ? 8.8 : 9.8;

  auto human = [=, &gaze_noise](double t) {
    HumanState s;
    const double away = (1.0 - blend(t, arrive0, arrive1)) + blend(t, leave0, leave1);
    s.root = stance + away * offset;
    s.reach = blend(t, 3.4, 4.4) - blend(t, 6.1, 7.1);
    s.reach_target = target;
    if (dangerous) {
      // Distracted, with one short glance back while the robot holds still.
      const double glance = blend(t, 4.4, 4.6) - blend(t, 4.8, 5.0);
      s.gaze_offset = (125.0 - 120.0 * glance) * kDegToRad + 2.5 * gaze_noise(t);
    } else {
      s.gaze_offset = gaze_noise(t);
    }
    return s;
  };
  return {robot, 10.0, human};
}

Script collaboration_script(const RobotModel& model, Variant variant,
                            const SmoothNoise& gaze_noise) {
  JointScript robot({{0.0, kHandover},
                     {1.5, kHandover},
                     {3.5, kPlace},
                     {5.5, kPlace},
                     {7.5, kHandover},
                     {8.0, kHandover}});
  const Layout l = make_layout(model, kHandover);
  const Vec3 target = l.work_point + 0.03 * l.toward_work;
  const bool dangerous = variant == Variant::kDangerous;
  // Shared bench in front of the robot; the careful operator keeps a step
  // back and only reaches in while the arm is away at the place pose.
  const Vec3 stance = stance_for(l, target) + (dangerous ? 0.0 : 0.35) * l.toward_work;

  auto human = [=, &gaze_noise](double t) {
    HumanState s;
    s.root = stance;
    s.reach_target = target;
    if (dangerous) {
      s.reach = blend(t, 0.5, 1.5) - blend(t, 4.0, 5.0);
      const double distracted = blend(t, 1.0, 1.4) - blend(t, 6.0, 6.4);
      s.gaze_offset = (10.0 + 100.0 * distracted) * kDegToRad + 2.5 * gaze_noise(t);
    } else {
      s.reach = 0.6 * (blend(t, 3.4, 4.2) - blend(t, 4.8, 5.6));
      s.gaze_offset = gaze_noise(t);
    }
    return s;
  };
  return {robot, 8.0, human};
}

Script coexistence_script(const RobotModel& model, Variant variant,
                          const SmoothNoise& gaze_noise) {
  JointScript robot({{0.0, kHandover},
                     {1.0, kHandover},
                     {3.0, kPlace},
                     {4.0, kPlace},
                     {6.0, kHandover},
                     {7.0, kHandover},
                     {9.0, kPlace},
                     {10.0, kPlace},
                     {12.0, kHandover}});
  const Layout l = make_layout(model, kHandover);
  const Vec3 base = horizontal(model.base_pose.translation());
  const bool dangerous = variant == Variant::kDangerous;
  // Own workstation beside the robot cell; the dangerous operator wanders
  // into the cell mid-episode.
  const Vec3 station = base + 2.2 * l.toward_work - 1.2 * l.left;
  const Vec3 intrusion = base + 1.0 * l.toward_work - 0.4 * l.left;

  auto human = [=, &gaze_noise](double t) {
    HumanState s;
    const double inside = dangerous ? blend(t, 3.0, 5.0) - blend(t, 9.0, 11.0) : 0.0;
    s.root = station + inside * (intrusion - station);
    s.gaze_offset = dangerous ? 150.0 * kDegToRad + 2.5 * gaze_noise(t)
                              : 60.0 * kDegToRad + 2.5 * gaze_noise(t);
    return s;
  };
  return {robot, 12.0, human};
}

}  // namespace

std::vector<SceneFrame> generate(const ScenarioSpec& spec, const RobotModel& model) {
  spec.validate();
  model.validate();
  if (model.joint_count() != 6) {
    throw Error(ErrorCode::kInvalidModel, "scenario generator needs a 6-joint arm");
  }

  const auto topology = SkeletonTopology::default_humanoid();
  const std::uint64_t variant_salt = spec.variant == Variant::kDangerous ? 2 : 3;
  const SmoothNoise sway_x(stream_seed(spec.seed, spec.kind, 0), 0.01);
  const SmoothNoise sway_y(stream_seed(spec.seed, spec.kind, 1), 0.01);
  const SmoothNoise gaze(stream_seed(spec.seed, spec.kind, variant_salt), 4.0 * kDegToRad);

  Script script = [&] {
    switch (spec.kind) {
      case ScenarioKind::kCollaboration: return collaboration_script(model, spec.variant, gaze);
      case ScenarioKind::kCoexistence: return coexistence_script(model, spec.variant, gaze);
      case ScenarioKind::kHandover: break;
    }
    return handover_script(model, spec.variant, gaze);
  }();
  const Layout layout = make_layout(model, kHandover);

  const std::size_t n = spec.frame_count();
  std::vector<SceneFrame> frames;
  frames.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / spec.rate;
    const double t_local = std::fmod(t, script.period);

    SceneFrame f;
    f.t = t;
    Eigen::VectorXd q, qd;
    script.robot.sample(t_local, q, qd);
    f.robot.q = q;
    f.robot.qd = qd;

    const HumanState hs = script.human(t_local);
    const Vec3 sway(sway_x(t), sway_y(t), 0.0);
    f.human.joints = build_joints(hs, layout.facing, sway);
    f.human.topology = topology;

    const Vec3 head_point = 0.5 * (f.human.joints.at("neck") + f.human.joints.at("head"));
    const Vec3 ee = forward_kinematics(model, f.robot.q).ee_position;
    const double yaw_to_ee = std::atan2(ee.y() - head_point.y(), ee.x() - head_point.x());
    f.head = HeadPose::from_yaw(head_point, yaw_to_ee + hs.gaze_offset);
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace hrc
