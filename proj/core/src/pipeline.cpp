#include "hrc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "hrc/error.hpp"
#include "hrc/geometry.hpp"

namespace hrc {

std::string_view to_string(ProcessingMode mode) noexcept {
  return mode == ProcessingMode::kParallel ? "parallel" : "sequential";
}

FrameHazard evaluate_frame(const SceneFrame& frame, const CartesianVelocity& velocity,
                           const RobotModel& model, const HazardConfig& cfg) {
  const auto& limits = model.safety;
  const auto pose = forward_kinematics(model, frame.robot.q);
  const auto human = frame.human.capsules();
  const auto prox = min_human_robot_distance(std::span<const Capsule>(human),
                                             std::span<const Capsule>(pose.link_capsules));
  const auto direction = worst_case_direction(prox);

  FrameHazard out;
  out.t = frame.t;
  out.d_h = prox.distance;
  out.v_mag = velocity.v.norm();
  out.cos_theta = direction_cosine(velocity.v, direction);
  out.closest_link = prox.link;
  out.closest_segment = prox.segment;

  const auto distance_params = resolve_distance_params(cfg, limits, out.v_mag);
  out.r_d = distance_hazard(out.d_h, distance_params);
  out.r_v = velocity_hazard(velocity.v, direction, cfg, limits);

  const auto phh = phh_angle(frame.head, pose.ee_position);
  out.phh = phh.angle;
  out.r_phh = phh_hazard(phh.angle, cfg);

  const auto total = total_hazard(out.r_d, out.r_v, out.r_phh, out.d_h, out.v_mag, cfg, limits);
  out.r_total = total.value;

  if (velocity.estimated) out.flags.set(FrameFlag::kEstimatedVelocity);
  if (!direction) out.flags.set(FrameFlag::kContactSingularity);
  if (total.gated) out.flags.set(FrameFlag::kGatedZero);
  if (phh.degenerate) out.flags.set(FrameFlag::kDegeneratePhh);
  return out;
}

FrameHazard evaluate_frame(const SceneFrame& frame, const SceneFrame* prev,
                           const RobotModel& model, const HazardConfig& cfg) {
  return evaluate_frame(frame, cartesian_velocity(model, frame, prev), model, cfg);
}

ScenarioAnalyzer::ScenarioAnalyzer(const RobotModel& model, const HazardConfig& cfg,
                                   PipelineOptions options)
    : model_(&model), cfg_(cfg), options_(options), validator_(model) {
  model.validate();
  cfg_.validate(model.safety);
}

const FrameHazard& ScenarioAnalyzer::push(const SceneFrame& frame) {
  const std::size_t index = validator_.accepted();
  validator_.accept(frame);
  try {
    auto velocity = cartesian_velocity(*model_, frame, prev_ ? &*prev_ : nullptr);
    const std::size_t window = options_.velocity_smoothing_window;
    if (window > 1) {
      const double raw = velocity.v.norm();
      recent_speeds_.push_back(raw);
      if (recent_speeds_.size() > window) recent_speeds_.erase(recent_speeds_.begin());
      const double mean = std::accumulate(recent_speeds_.begin(), recent_speeds_.end(), 0.0) /
                          static_cast<double>(recent_speeds_.size());
      if (raw > 0.0) velocity.v *= mean / raw;
    }
    frames_.push_back(evaluate_frame(frame, velocity, *model_, cfg_));
  } catch (const Error& e) {
    throw e.at_frame(index);
  }
  prev_ = frame;
  return frames_.back();
}

ScenarioReport ScenarioAnalyzer::finish() && {
  if (frames_.empty()) throw Error(ErrorCode::kEmptyScenario, "scenario has no frames");
  ScenarioReport report;
  report.summary = summarize(frames_);
  report.frames = std::move(frames_);
  report.config = cfg_;
  report.safety = model_->safety;
  report.mode = ProcessingMode::kSequential;
  report.options = options_;
  return report;
}

ScenarioReport analyze_scenario(std::span<const SceneFrame> frames, const RobotModel& model,
                                const HazardConfig& cfg, const PipelineOptions& options) {
  if (frames.empty()) throw Error(ErrorCode::kEmptyScenario, "scenario has no frames");

  const bool all_have_qd =
      std::all_of(frames.begin(), frames.end(), [](const SceneFrame& f) { return f.robot.qd.has_value(); });
  const bool parallel =
      options.threads > 1 && options.velocity_smoothing_window <= 1 && all_have_qd && frames.size() > 1;

  if (!parallel) {
    ScenarioAnalyzer analyzer(model, cfg, options);
    for (const auto& f : frames) analyzer.push(f);
    return std::move(analyzer).finish();
  }

  model.validate();
  cfg.validate(model.safety);
  StreamValidator validator(model);
  for (const auto& f : frames) validator.accept(f);

  std::vector<FrameHazard> out(frames.size());
  const std::size_t workers = std::min<std::size_t>(options.threads, frames.size());
  const std::size_t chunk = (frames.size() + workers - 1) / workers;
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(frames.size(), begin + chunk);
        std::size_t i = begin;
        try {
          for (; i < end; ++i) {
            out[i] = evaluate_frame(frames[i], static_cast<const SceneFrame*>(nullptr), model, cfg);
          }
        } catch (const Error& e) {
          failures[w] = std::make_exception_ptr(e.at_frame(i));
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  ScenarioReport report;
  report.summary = summarize(out);
  report.frames = std::move(out);
  report.config = cfg;
  report.safety = model.safety;
  report.mode = ProcessingMode::kParallel;
  report.options = options;
  return report;
}

namespace {

// Interval each frame stands for: the gap to the next frame, and for the last
// frame the gap before it.
std::vector<double> frame_intervals(std::span<const FrameHazard> frames) {
  std::vector<double> dt(frames.size(), 0.0);
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) dt[i] = frames[i + 1].t - frames[i].t;
  if (frames.size() >= 2) dt.back() = dt[dt.size() - 2];
  return dt;
}

template <typename Getter>
IndicatorSummary summarize_indicator(std::span<const FrameHazard> frames,
                                     const std::vector<double>& dt, Getter get) {
  IndicatorSummary s;
  double sum = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double r = get(frames[i]);
    s.max = std::max(s.max, r);
    sum += r;
    for (std::size_t k = 0; k < kSummaryThresholds.size(); ++k) {
      if (r > kSummaryThresholds[k]) s.time_above[k] += dt[i];
    }
  }
  if (!frames.empty()) s.mean = sum / static_cast<double>(frames.size());
  return s;
}

double median_interval(std::span<const FrameHazard> frames) {
  if (frames.size() < 2) return 0.0;
  std::vector<double> dt;
  dt.reserve(frames.size() - 1);
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) dt.push_back(frames[i + 1].t - frames[i].t);
  const auto mid = dt.begin() + static_cast<std::ptrdiff_t>(dt.size() / 2);
  std::nth_element(dt.begin(), mid, dt.end());
  return *mid;
}

}  // namespace

ScenarioSummary summarize(std::span<const FrameHazard> frames) {
  ScenarioSummary s;
  s.frame_count = frames.size();
  const auto dt = frame_intervals(frames);
  s.duration = std::accumulate(dt.begin(), dt.end(), 0.0);
  s.r_d = summarize_indicator(frames, dt, [](const FrameHazard& f) { return f.r_d; });
  s.r_v = summarize_indicator(frames, dt, [](const FrameHazard& f) { return f.r_v; });
  s.r_phh = summarize_indicator(frames, dt, [](const FrameHazard& f) { return f.r_phh; });
  s.r_total = summarize_indicator(frames, dt, [](const FrameHazard& f) { return f.r_total; });
  return s;
}

ScenarioComparison compare_scenarios(std::span<const FrameHazard> a,
                                     std::span<const FrameHazard> b) {
  ScenarioComparison out;
  out.a = summarize(a);
  out.b = summarize(b);
  if (a.empty() || b.empty()) {
    out.warnings.emplace_back("one of the reports has no frames; nothing to align");
    return out;
  }

  const double tolerance = 0.5 * std::max(median_interval(a), median_interval(b));
  std::size_t dominated = 0;
  for (const auto& fa : a) {
    const auto it = std::lower_bound(b.begin(), b.end(), fa.t,
                                     [](const FrameHazard& f, double t) { return f.t < t; });
    const FrameHazard* best = nullptr;
    if (it != b.end()) best = &*it;
    if (it != b.begin()) {
      const auto& before = *(it - 1);
      if (best == nullptr || std::abs(before.t - fa.t) <= std::abs(best->t - fa.t)) best = &before;
    }
    if (best == nullptr || std::abs(best->t - fa.t) > tolerance) continue;
    ComparisonRow row{fa.t,
                      best->t,
                      fa.r_d - best->r_d,
                      fa.r_v - best->r_v,
                      fa.r_phh - best->r_phh,
                      fa.r_total - best->r_total};
    if (fa.r_total > best->r_total) ++dominated;
    out.rows.push_back(row);
  }

  if (out.rows.empty()) {
    out.warnings.emplace_back("reports share no aligned timestamps");
  } else {
    out.dominance_fraction = static_cast<double>(dominated) / static_cast<double>(out.rows.size());
  }
  return out;
}

}  // namespace hrc
