#include "hrc/hazard.hpp"

#include <algorithm>
#include <cmath>

#include "hrc/error.hpp"

namespace hrc {

std::string_view to_string(DMinPolicy policy) noexcept {
  return policy == DMinPolicy::kStatic ? "static" : "per-frame";
}

std::string_view to_string(GateMode mode) noexcept {
  return mode == GateMode::kPaperStrict ? "paper-strict" : "ungated";
}

std::optional<DMinPolicy> parse_d_min_policy(std::string_view text) noexcept {
  if (text == "static") return DMinPolicy::kStatic;
  if (text == "per-frame") return DMinPolicy::kPerFrame;
  return std::nullopt;
}

std::optional<GateMode> parse_gate_mode(std::string_view text) noexcept {
  if (text == "paper-strict") return GateMode::kPaperStrict;
  if (text == "ungated") return GateMode::kUngated;
  return std::nullopt;
}

void HazardConfig::validate(const SafetyLimits& limits) const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (!(epsilon_reach > 0.0 && epsilon_reach < 1.0)) fail("epsilon_reach must be in (0, 1)");
  if (!(beta >= 0.0 && beta <= 1.0)) fail("beta must be in [0, 1]");
  if (!(c > 0.0) || !std::isfinite(c)) fail("c must be > 0");
  double weight_sum = 0.0;
  for (double w : omega) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail("omega weights must be finite and >= 0");
    weight_sum += w;
  }
  if (!(weight_sum > 0.0)) fail("omega weights must not all be zero");
  if (d_min && (!(*d_min >= 0.0) || !std::isfinite(*d_min))) fail("d_min must be >= 0");
  if (!(static_d_min(*this, limits) < limits.d_reach)) fail("d_min must be below d_reach");
}

double calibrate_alpha(double d_min, double d_reach, double epsilon_reach) {
  if (!(d_min < d_reach)) {
    throw Error(ErrorCode::kInvalidCalibration, "d_min must be below d_reach");
  }
  if (!(epsilon_reach > 0.0 && epsilon_reach < 1.0)) {
    throw Error(ErrorCode::kInvalidCalibration, "epsilon_reach must be in (0, 1)");
  }
  return std::log(1.0 / epsilon_reach) / (d_reach - d_min);
}

double d_min_from_stop_time(double v, double t_stop) { return v * t_stop; }

double static_d_min(const HazardConfig& cfg, const SafetyLimits& limits) {
  return cfg.d_min ? *cfg.d_min : d_min_from_stop_time(limits.v_max, limits.t_stop);
}

DistanceParams resolve_distance_params(const HazardConfig& cfg, const SafetyLimits& limits,
                                       double v_mag) {
  DistanceParams p;
  p.d_reach = limits.d_reach;
  p.d_min = cfg.d_min_policy == DMinPolicy::kStatic ? static_d_min(cfg, limits)
                                                    : d_min_from_stop_time(v_mag, limits.t_stop);
  if (p.d_min < p.d_reach) p.alpha = calibrate_alpha(p.d_min, p.d_reach, cfg.epsilon_reach);
  return p;
}

double distance_hazard(double d_h, const DistanceParams& params) {
  if (d_h <= params.d_min) return 1.0;
  if (d_h >= params.d_reach) return 0.0;
  return std::exp(-params.alpha * (d_h - params.d_min));
}

double distance_hazard(double d_h, const HazardConfig& cfg, const RobotModel& model) {
  const auto params = resolve_distance_params(cfg, model.safety, model.safety.v_max);
  return distance_hazard(d_h, params);
}

double velocity_gain(const SafetyLimits& limits) {
  const double span = limits.v_max - limits.v_min;
  return 1.0 / (span * span);
}

double velocity_magnitude_hazard(double v, const SafetyLimits& limits) {
  if (v < limits.v_min) return 0.0;
  if (v >= limits.v_max) return 1.0;
  // k_V (v - V_min)^2 written as a squared ratio so V_max maps to exactly 1.
  const double ratio = (v - limits.v_min) / (limits.v_max - limits.v_min);
  return ratio * ratio;
}

double direction_cosine(const Vec3& v, const std::optional<Vec3>& d) {
  if (!d) return 0.0;
  const double nv = v.norm();
  const double nd = d->norm();
  if (nv == 0.0 || nd == 0.0) return 0.0;
  return std::clamp(v.dot(*d) / (nv * nd), -1.0, 1.0);
}

double directional_hazard(const Vec3& v, const std::optional<Vec3>& d) {
  return (1.0 + direction_cosine(v, d)) / 2.0;
}

double velocity_hazard(const Vec3& v, const std::optional<Vec3>& d, const HazardConfig& cfg,
                       const SafetyLimits& limits) {
  const double speed = v.norm();
  if (speed < limits.v_min) return 0.0;
  return cfg.beta * velocity_magnitude_hazard(speed, limits) +
         (1.0 - cfg.beta) * directional_hazard(v, d);
}

PhhAngle phh_angle(const HeadPose& head, const Vec3& ee_position) {
  Vec3 ref = ee_position - head.position;
  Vec3 gaze = head.gaze;
  ref.z() = 0.0;
  gaze.z() = 0.0;
  const double nr = ref.norm();
  const double ng = gaze.norm();
  if (nr < kGazeDegenerateNorm || ng < kGazeDegenerateNorm) return {0.0, true};
  const double cosine = std::clamp(ref.dot(gaze) / (nr * ng), -1.0, 1.0);
  return {std::acos(cosine), false};
}

double phh_hazard(double phh, const HazardConfig& cfg) {
  if (phh >= std::numbers::pi / 2.0) return 1.0;
  const double x = phh / cfg.c;
  return 1.0 - std::exp(-x * x);
}

TotalHazard total_hazard(double r_d, double r_v, double r_phh, double d_h, double v_mag,
                         const HazardConfig& cfg, const SafetyLimits& limits) {
  if (cfg.gate_mode == GateMode::kPaperStrict && !(v_mag >= limits.v_min && d_h <= limits.d_reach)) {
    return {0.0, true};
  }
  const auto& w = cfg.omega;
  const double weighted = w[0] * r_d + w[1] * r_v + w[2] * r_phh;
  return {weighted / (w[0] + w[1] + w[2]), false};
}

namespace {

struct FlagName {
  FrameFlag flag;
  std::string_view name;
};

constexpr std::array<FlagName, 4> kFlagNames{{
    {FrameFlag::kEstimatedVelocity, "estimated-velocity"},
    {FrameFlag::kContactSingularity, "contact-singularity"},
    {FrameFlag::kGatedZero, "gated-zero"},
    {FrameFlag::kDegeneratePhh, "phh-degenerate"},
}};

}  // namespace

std::string FrameFlags::to_string() const {
  std::string out;
  for (const auto& [flag, name] : kFlagNames) {
    if (!test(flag)) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

FrameFlags FrameFlags::parse(std::string_view text) {
  FrameFlags flags;
  while (!text.empty()) {
    const auto bar = text.find('|');
    const auto token = text.substr(0, bar);
    const auto it = std::find_if(kFlagNames.begin(), kFlagNames.end(),
                                 [&](const FlagName& f) { return f.name == token; });
    if (it == kFlagNames.end()) {
      throw Error(ErrorCode::kParseError, "unknown frame flag '" + std::string(token) + "'");
    }
    flags.set(it->flag);
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  return flags;
}

}  // namespace hrc
