#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hrc/config.hpp"
#include "hrc/geometry.hpp"
#include "hrc/kinematics.hpp"
#include "hrc/pipeline.hpp"
#include "hrc/simulator.hpp"

namespace {

const hrc::RobotModel& ur10() {
  static const hrc::RobotModel m = hrc::load_robot_model(std::string(HRC_CONFIG_DIR) + "/ur10.toml");
  return m;
}

const std::vector<hrc::SceneFrame>& handover() {
  static const auto frames = [] {
    hrc::ScenarioSpec spec;
    spec.variant = hrc::Variant::kDangerous;
    spec.duration = 60.0;
    return hrc::generate(spec, ur10());
  }();
  return frames;
}

void BM_SegmentDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<hrc::Vec3> pts(4096);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    const auto r = hrc::segment_segment_distance(pts[i & 4095], pts[(i + 1) & 4095], pts[(i + 2) & 4095], pts[(i + 3) & 4095]);
    benchmark::DoNotOptimize(r.distance);
    i += 4;
  }
}
BENCHMARK(BM_SegmentDistance);

void BM_ForwardKinematics(benchmark::State& state) {
  const Eigen::VectorXd q = Eigen::VectorXd::Constant(6, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(hrc::forward_kinematics(ur10(), q).ee_position);
}
BENCHMARK(BM_ForwardKinematics);

void BM_Jacobian(benchmark::State& state) {
  const Eigen::VectorXd q = Eigen::VectorXd::Constant(6, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(hrc::jacobian(ur10(), q).data());
}
BENCHMARK(BM_Jacobian);

void BM_HumanRobotDistance(benchmark::State& state) {
  const auto& f = handover()[120];
  const auto pose = hrc::forward_kinematics(ur10(), f.robot.q);
  for (auto _ : state) benchmark::DoNotOptimize(hrc::min_human_robot_distance(f.human, pose.link_capsules).distance);
}
BENCHMARK(BM_HumanRobotDistance);

void BM_EvaluateFrame(benchmark::State& state) {
  const auto& f = handover()[120];
  const hrc::HazardConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(hrc::evaluate_frame(f, nullptr, ur10(), cfg).r_total);
}
BENCHMARK(BM_EvaluateFrame);

void BM_AnalyzeScenario(benchmark::State& state) {
  hrc::PipelineOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  const hrc::HazardConfig cfg;
  for (auto _ : state) {
    const auto report = hrc::analyze_scenario(handover(), ur10(), cfg, opt);
    benchmark::DoNotOptimize(report.summary.r_total.mean);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(handover().size()));
}
BENCHMARK(BM_AnalyzeScenario)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
