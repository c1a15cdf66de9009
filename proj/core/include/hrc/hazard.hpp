#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "hrc/kinematics.hpp"
#include "hrc/scene.hpp"
#include "hrc/types.hpp"

namespace hrc {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

enum class DMinPolicy {
  kStatic,    // V_max * T_stop (or an explicit override)
  kPerFrame,  // |v| * T_stop of the current frame
};

enum class GateMode {
  kPaperStrict,  // total hazard is zero unless v >= V_min and d_H <= d_reach
  kUngated,
};

std::string_view to_string(DMinPolicy policy) noexcept;
std::string_view to_string(GateMode mode) noexcept;
std::optional<DMinPolicy> parse_d_min_policy(std::string_view text) noexcept;
std::optional<GateMode> parse_gate_mode(std::string_view text) noexcept;

struct HazardConfig {
  double epsilon_reach = 0.01;    // r_D just inside d_reach, fixes alpha
  std::optional<double> d_min;    // m, overrides the static V_max * T_stop value
  DMinPolicy d_min_policy = DMinPolicy::kStatic;
  double beta = 0.75;             // weight of the magnitude term in r_V
  double c = 40.0 * kDegToRad;    // rad, PHH steepness
  std::array<double, 3> omega{1.0, 1.0, 2.0};  // distance, velocity, PHH
  GateMode gate_mode = GateMode::kPaperStrict;

  // Throws Error(kInvalidConfig) when a field is out of range, including a
  // static d_min that is not below d_reach.
  void validate(const SafetyLimits& limits) const;
};

// --- distance ---------------------------------------------------------------

// alpha such that exp(-alpha * (d_reach - d_min)) == epsilon_reach.
// Throws Error(kInvalidCalibration) if d_min >= d_reach or epsilon is not in
// (0, 1).
double calibrate_alpha(double d_min, double d_reach, double epsilon_reach);

// Tight bound of d_min >= v * T_stop.
double d_min_from_stop_time(double v, double t_stop);

// d_min used under the static policy.
double static_d_min(const HazardConfig& cfg, const SafetyLimits& limits);

struct DistanceParams {
  double d_min = 0.0;
  double d_reach = 0.0;
  double alpha = 0.0;  // 1/m; unused when d_min >= d_reach
};

// Resolves d_min and alpha. Under the per-frame policy the d_min comes from
// v_mag; under the static policy v_mag is ignored.
DistanceParams resolve_distance_params(const HazardConfig& cfg, const SafetyLimits& limits,
                                       double v_mag);

// 1 for d_H <= d_min, 0 for d_H >= d_reach, exp(-alpha (d_H - d_min)) between.
double distance_hazard(double d_h, const DistanceParams& params);
double distance_hazard(double d_h, const HazardConfig& cfg, const RobotModel& model);

// --- velocity ---------------------------------------------------------------

// k_V = 1 / (V_max - V_min)^2
double velocity_gain(const SafetyLimits& limits);

// 0 below V_min, k_V (v - V_min)^2 up to V_max, 1 above.
double velocity_magnitude_hazard(double v, const SafetyLimits& limits);

// cos of the angle between v and the worst-case direction; 0 when either is
// missing or zero.
double direction_cosine(const Vec3& v, const std::optional<Vec3>& d);

// (1 + cos theta) / 2
double directional_hazard(const Vec3& v, const std::optional<Vec3>& d);

// beta * magnitude + (1 - beta) * directional, or 0 below V_min.
double velocity_hazard(const Vec3& v, const std::optional<Vec3>& d, const HazardConfig& cfg,
                       const SafetyLimits& limits);

// --- head orientation -------------------------------------------------------

struct PhhAngle {
  double angle = 0.0;  // rad in [0, pi]
  bool degenerate = false;
};

inline constexpr double kGazeDegenerateNorm = 1e-9;

// Yaw-only deviation between the gaze and the head-to-end-effector
// direction. Both are projected on the horizontal plane; if either
// projection vanishes the angle is 0 and flagged degenerate.
PhhAngle phh_angle(const HeadPose& head, const Vec3& ee_position);

// 1 - exp(-(phh / c)^2), saturated to exactly 1 from pi/2 on.
double phh_hazard(double phh, const HazardConfig& cfg);

// --- aggregate --------------------------------------------------------------

struct TotalHazard {
  double value = 0.0;
  bool gated = false;  // forced to zero by the gate
};

TotalHazard total_hazard(double r_d, double r_v, double r_phh, double d_h, double v_mag,
                         const HazardConfig& cfg, const SafetyLimits& limits);

// --- per-frame record -------------------------------------------------------

enum class FrameFlag : std::uint8_t {
  kEstimatedVelocity = 1u << 0,
  kContactSingularity = 1u << 1,
  kGatedZero = 1u << 2,
  kDegeneratePhh = 1u << 3,
};

class FrameFlags {
 public:
  constexpr FrameFlags() = default;

  constexpr void set(FrameFlag f) noexcept { bits_ |= static_cast<std::uint8_t>(f); }
  constexpr bool test(FrameFlag f) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(f)) != 0;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool operator==(const FrameFlags&) const = default;

  // "estimated-velocity|contact-singularity|gated-zero|phh-degenerate"
  // subset in that order; empty string when no flag is set.
  std::string to_string() const;
  // Throws Error(kParseError) on an unknown name.
  static FrameFlags parse(std::string_view text);

 private:
  std::uint8_t bits_ = 0;
};

struct FrameHazard {
  double t = 0.0;
  double d_h = 0.0;        // m
  double v_mag = 0.0;      // m/s
  double cos_theta = 0.0;
  double phh = 0.0;        // rad
  double r_d = 0.0;
  double r_v = 0.0;
  double r_phh = 0.0;
  double r_total = 0.0;
  std::size_t closest_link = 0;
  std::size_t closest_segment = 0;
  FrameFlags flags;

  bool operator==(const FrameHazard&) const = default;
};

}  // namespace hrc
