#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hrc/kinematics.hpp"
#include "hrc/scene.hpp"

namespace hrc {

enum class ScenarioKind { kHandover, kCollaboration, kCoexistence };
enum class Variant { kDangerous, kNonDangerous };

std::string_view to_string(ScenarioKind kind) noexcept;
std::string_view to_string(Variant variant) noexcept;
std::optional<ScenarioKind> parse_scenario_kind(std::string_view text) noexcept;
std::optional<Variant> parse_variant(std::string_view text) noexcept;

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kHandover;
  Variant variant = Variant::kNonDangerous;
  double duration = 10.0;  // s
  double rate = 30.0;      // frames/s
  std::uint64_t seed = 0;

  // Throws Error(kInvalidConfig) unless duration and rate are positive and
  // finite.
  void validate() const;
  // round(duration * rate), at least one.
  std::size_t frame_count() const;
};

// Synthetic frame stream for a 6-joint arm and the default humanoid skeleton.
// Each kind plays a scripted episode that repeats for long durations. The
// robot's joint trajectory depends only on the kind, so both variants of a
// kind share it bit for bit; variants differ in where the human stands
// outside the robot's motion windows and where the human looks. Deterministic
// for a given spec. Throws Error(kInvalidModel) for models without 6 joints.
std::vector<SceneFrame> generate(const ScenarioSpec& spec, const RobotModel& model);

}  // namespace hrc
