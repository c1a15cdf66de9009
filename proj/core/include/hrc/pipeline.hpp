#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrc/hazard.hpp"
#include "hrc/kinematics.hpp"
#include "hrc/scene.hpp"

namespace hrc {

struct PipelineOptions {
  unsigned threads = 1;
  // Trailing moving average of the end-effector speed over this many frames.
  // 0 and 1 disable smoothing.
  std::size_t velocity_smoothing_window = 0;
};

enum class ProcessingMode { kSequential, kParallel };
std::string_view to_string(ProcessingMode mode) noexcept;

inline constexpr std::array<double, 2> kSummaryThresholds{0.5, 0.8};

struct IndicatorSummary {
  double max = 0.0;
  double mean = 0.0;
  std::array<double, 2> time_above{0.0, 0.0};  // s, per kSummaryThresholds
};

struct ScenarioSummary {
  std::size_t frame_count = 0;
  double duration = 0.0;  // s, sum of per-frame intervals
  IndicatorSummary r_d;
  IndicatorSummary r_v;
  IndicatorSummary r_phh;
  IndicatorSummary r_total;
};

struct ScenarioReport {
  std::vector<FrameHazard> frames;
  ScenarioSummary summary;
  HazardConfig config;
  SafetyLimits safety;
  ProcessingMode mode = ProcessingMode::kSequential;
  PipelineOptions options;
};

// Evaluates one frame with an already known end-effector velocity.
FrameHazard evaluate_frame(const SceneFrame& frame, const CartesianVelocity& velocity,
                           const RobotModel& model, const HazardConfig& cfg);

// Evaluates one frame; prev is only consulted for the finite-difference
// velocity fallback when the frame carries no joint velocities.
FrameHazard evaluate_frame(const SceneFrame& frame, const SceneFrame* prev,
                           const RobotModel& model, const HazardConfig& cfg);

// Incremental analysis of a frame stream. Each push validates the frame
// against the stream so far and evaluates it.
class ScenarioAnalyzer {
 public:
  ScenarioAnalyzer(const RobotModel& model, const HazardConfig& cfg,
                   PipelineOptions options = {});

  const FrameHazard& push(const SceneFrame& frame);
  std::span<const FrameHazard> frames() const noexcept { return frames_; }

  // Throws Error(kEmptyScenario) if nothing was pushed.
  ScenarioReport finish() &&;

 private:
  const RobotModel* model_;
  HazardConfig cfg_;
  PipelineOptions options_;
  StreamValidator validator_;
  std::optional<SceneFrame> prev_;
  std::vector<double> recent_speeds_;
  std::vector<FrameHazard> frames_;
};

// Analyzes a whole scenario. Frames that all carry joint velocities are
// evaluated in parallel when options.threads > 1 and smoothing is off; the
// report records which mode was used. Output does not depend on the mode.
ScenarioReport analyze_scenario(std::span<const SceneFrame> frames, const RobotModel& model,
                                const HazardConfig& cfg, const PipelineOptions& options = {});

ScenarioSummary summarize(std::span<const FrameHazard> frames);

struct ComparisonRow {
  double t_a = 0.0;
  double t_b = 0.0;
  double d_r_d = 0.0;  // a - b
  double d_r_v = 0.0;
  double d_r_phh = 0.0;
  double d_r_total = 0.0;
};

struct ScenarioComparison {
  std::vector<ComparisonRow> rows;
  ScenarioSummary a;
  ScenarioSummary b;
  // Fraction of aligned frames where a's total hazard is strictly greater.
  double dominance_fraction = 0.0;
  std::vector<std::string> warnings;
};

// Joins every frame of a to the nearest-in-time frame of b. Frames further
// than half of the larger median sampling interval from any b frame are
// dropped.
ScenarioComparison compare_scenarios(std::span<const FrameHazard> a,
                                     std::span<const FrameHazard> b);

}  // namespace hrc
