#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hrc/error.hpp"
#include "hrc/hazard.hpp"
#include "oracles.hpp"

using namespace hrc;

namespace {

constexpr double kPi = std::numbers::pi;

SafetyLimits limits() { return {0.25, 1.0, 0.5, 1.3}; }

RobotModel model_with(const SafetyLimits& s) {
  RobotModel m;
  m.joints = {{0.5, 0.0, 0.0, 0.0}};
  m.link_radii = {0.05};
  m.safety = s;
  return m;
}

Vec3 at_angle(double v, double theta) { return {v * std::cos(theta), v * std::sin(theta), 0.0}; }

const std::optional<Vec3> kX = Vec3::UnitX();

}  // namespace

// --- calibration ---------------------------------------------------------------

TEST(Calibration, SpecExamples) {
  EXPECT_NEAR(calibrate_alpha(0.0, 1.0, std::exp(-2.0)), 2.0, 1e-15);
  EXPECT_NEAR(calibrate_alpha(0.5, 1.3, 0.01), std::log(100.0) / 0.8, 1e-15);
  EXPECT_NEAR(calibrate_alpha(0.5, 1.3, 0.01), 5.756, 5e-4);
  EXPECT_LT(calibrate_alpha(0.5, 1.3, 1.0 - 1e-12), 1e-10);
}

TEST(Calibration, HitsEpsilonAtReach) {
  for (double eps : {0.5, 0.1, 0.01, 1e-4}) {
    const double a = calibrate_alpha(0.2, 1.7, eps);
    EXPECT_NEAR(std::exp(-a * (1.7 - 0.2)), eps, 1e-15);
  }
}

TEST(Calibration, Errors) {
  for (auto bad : {std::array{1.3, 1.3, 0.01}, std::array{1.5, 1.3, 0.01}, std::array{0.5, 1.3, 0.0},
                   std::array{0.5, 1.3, 1.0}}) {
    try {
      calibrate_alpha(bad[0], bad[1], bad[2]);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidCalibration);
    }
  }
}

TEST(DMin, FromStopTime) {
  EXPECT_EQ(d_min_from_stop_time(1.0, 0.5), 0.5);
  EXPECT_EQ(d_min_from_stop_time(0.0, 0.5), 0.0);
  EXPECT_NEAR(d_min_from_stop_time(1.0, 0.3), 0.3, 1e-16);
  HazardConfig cfg;
  EXPECT_EQ(static_d_min(cfg, limits()), 0.5);
  cfg.d_min = 0.4;
  EXPECT_EQ(static_d_min(cfg, limits()), 0.4);
}

// --- distance ------------------------------------------------------------------

TEST(DistanceHazard, PiecewiseDefinition) {
  const HazardConfig cfg;
  const RobotModel m = model_with(limits());
  EXPECT_EQ(distance_hazard(0.5, cfg, m), 1.0);
  EXPECT_EQ(distance_hazard(0.0, cfg, m), 1.0);
  EXPECT_EQ(distance_hazard(1.3, cfg, m), 0.0);
  EXPECT_EQ(distance_hazard(7.0, cfg, m), 0.0);
  EXPECT_LE(distance_hazard(1.3 - 1e-9, cfg, m), 0.01 + 1e-6);
  for (double d : {0.6, 0.8, 1.0, 1.2}) {
    EXPECT_NEAR(distance_hazard(d, cfg, m), oracle::r_d(d, 0.5, 1.3, 0.01), 1e-15);
  }
}

TEST(DistanceHazard, DirectEvaluation) {
  const DistanceParams p{0.0, 2.0, 2.0};
  EXPECT_NEAR(distance_hazard(0.5, p), std::exp(-1.0), 1e-15);
}

TEST(DistanceHazard, PerFramePolicy) {
  HazardConfig cfg;
  cfg.d_min_policy = DMinPolicy::kPerFrame;
  const auto p = resolve_distance_params(cfg, limits(), 0.4);
  EXPECT_NEAR(p.d_min, 0.2, 1e-16);
  EXPECT_NEAR(p.alpha, std::log(100.0) / (1.3 - 0.2), 1e-14);
  const auto s = resolve_distance_params(HazardConfig{}, limits(), 0.4);
  EXPECT_EQ(s.d_min, 0.5);
}

TEST(DistanceHazard, StrictlyDecreasingInsideBand) {
  const DistanceParams p = resolve_distance_params(HazardConfig{}, limits(), 0.0);
  double prev = distance_hazard(0.5, p);
  for (int i = 1; i < 800; ++i) {
    const double r = distance_hazard(0.5 + 0.001 * i, p);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(DistanceHazard, BoundaryContinuity) {
  const DistanceParams p = resolve_distance_params(HazardConfig{}, limits(), 0.0);
  EXPECT_NEAR(distance_hazard(0.5 + 1e-12, p), 1.0, 1e-10);
  EXPECT_LE(distance_hazard(1.3 - 1e-12, p) - distance_hazard(1.3, p), 0.01 + 1e-9);
}

// --- velocity ------------------------------------------------------------------

TEST(VelocityMagnitude, Examples) {
  const SafetyLimits s = limits();
  EXPECT_EQ(velocity_magnitude_hazard(0.25, s), 0.0);
  EXPECT_EQ(velocity_magnitude_hazard(1.0, s), 1.0);
  EXPECT_EQ(velocity_magnitude_hazard(0.625, s), 0.25);
  EXPECT_EQ(velocity_magnitude_hazard(0.1, s), 0.0);
  EXPECT_EQ(velocity_magnitude_hazard(3.0, s), 1.0);
  EXPECT_NEAR(velocity_gain(s), 1.0 / 0.5625, 1e-15);
}

TEST(Directional, Examples) {
  EXPECT_EQ(directional_hazard(Vec3(2, 0, 0), kX), 1.0);
  EXPECT_EQ(directional_hazard(Vec3(-2, 0, 0), kX), 0.0);
  EXPECT_EQ(directional_hazard(Vec3(0, 3, 0), kX), 0.5);
  EXPECT_EQ(directional_hazard(Vec3::Zero(), kX), 0.5);
  EXPECT_EQ(directional_hazard(Vec3(1, 0, 0), std::nullopt), 0.5);
  EXPECT_EQ(direction_cosine(Vec3(1, 0, 0), std::nullopt), 0.0);
}

TEST(VelocityHazard, Examples) {
  const HazardConfig cfg;
  const SafetyLimits s = limits();
  EXPECT_EQ(velocity_hazard(Vec3(0.1, 0, 0), kX, cfg, s), 0.0);
  EXPECT_EQ(velocity_hazard(Vec3(1.0, 0, 0), kX, cfg, s), 1.0);
  EXPECT_EQ(velocity_hazard(Vec3(-1.0, 0, 0), kX, cfg, s), 0.75);
}

TEST(VelocityHazard, DocumentedJumpAtVMin) {
  const HazardConfig cfg;
  const SafetyLimits s = limits();
  for (double theta : {0.0, 0.4, 1.3, 2.9}) {
    const double below = velocity_hazard(at_angle(std::nextafter(0.25, 0.0), theta), kX, cfg, s);
    const double at = velocity_hazard(at_angle(0.25, theta), kX, cfg, s);
    EXPECT_EQ(below, 0.0);
    const double cos_t = direction_cosine(at_angle(0.25, theta), kX);
    EXPECT_EQ(at, (1.0 - cfg.beta) * (1.0 + cos_t) / 2.0);
  }
}

TEST(VelocityHazard, MatchesFormula) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> v(0.0, 1.5), th(0.0, kPi), b(0.0, 1.0);
  const SafetyLimits s = limits();
  for (int i = 0; i < 5000; ++i) {
    HazardConfig cfg;
    cfg.beta = b(rng);
    const double speed = v(rng), theta = th(rng);
    const Vec3 vel = at_angle(speed, theta);
    const double expected = oracle::r_v(vel.norm(), direction_cosine(vel, kX), cfg.beta, 0.25, 1.0);
    EXPECT_NEAR(velocity_hazard(vel, kX, cfg, s), expected, 1e-14);
    EXPECT_NEAR(direction_cosine(vel, kX), std::cos(theta), 1e-12);
  }
}

// --- PHH -----------------------------------------------------------------------

TEST(PhhAngleTest, Examples) {
  HeadPose head{Vec3(0, 0, 1.7), Vec3(1, 0, 0)};
  EXPECT_EQ(phh_angle(head, Vec3(2, 0, 0.5)).angle, 0.0);
  EXPECT_NEAR(phh_angle(head, Vec3(0, 2, 1.0)).angle, kPi / 2, 1e-15);
  head.gaze = Vec3(-1, 0, 0);
  EXPECT_NEAR(phh_angle(head, Vec3(1, 1, 1.7)).angle, 3 * kPi / 4, 1e-15);
}

TEST(PhhAngleTest, YawOnly) {
  const HeadPose head{Vec3(0, 0, 1.7), Vec3(std::sqrt(0.5), 0, -std::sqrt(0.5))};
  const auto a = phh_angle(head, Vec3(1, 0, 3.0));
  EXPECT_EQ(a.angle, 0.0);
  EXPECT_FALSE(a.degenerate);
}

TEST(PhhAngleTest, Degenerate) {
  HeadPose up{Vec3(0, 0, 1.7), Vec3(0, 0, 1)};
  auto a = phh_angle(up, Vec3(1, 0, 0));
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(a.angle, 0.0);
  HeadPose head{Vec3(0, 0, 1.7), Vec3(1, 0, 0)};
  a = phh_angle(head, Vec3(0, 0, 0.5));
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(a.angle, 0.0);
}

TEST(PhhHazard, Examples) {
  const HazardConfig cfg;
  EXPECT_EQ(phh_hazard(0.0, cfg), 0.0);
  EXPECT_EQ(phh_hazard(kPi / 2, cfg), 1.0);
  EXPECT_EQ(phh_hazard(kPi, cfg), 1.0);
  EXPECT_NEAR(phh_hazard(40.0 * kDegToRad, cfg), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(phh_hazard(40.0 * kDegToRad, cfg), 0.6321, 1e-4);
}

TEST(PhhHazard, JumpAtRightAngleBounded) {
  for (double c_deg : {20.0, 40.0, 60.0, 90.0}) {
    HazardConfig cfg;
    cfg.c = c_deg * kDegToRad;
    const double jump = phh_hazard(kPi / 2, cfg) - phh_hazard(std::nextafter(kPi / 2, 0.0), cfg);
    EXPECT_GE(jump, 0.0);
    EXPECT_LE(jump, std::exp(-std::pow(kPi / 2 / cfg.c, 2)) + 1e-15);
  }
}

// --- total ---------------------------------------------------------------------

TEST(TotalHazardTest, Examples) {
  const HazardConfig cfg;
  const SafetyLimits s = limits();
  EXPECT_EQ(total_hazard(1, 1, 1, 0.3, 0.5, cfg, s).value, 1.0);
  EXPECT_EQ(total_hazard(1, 0, 0, 0.3, 0.5, cfg, s).value, 0.25);
  EXPECT_EQ(total_hazard(0.8, 0.5, 1.0, 0.3, 0.5, cfg, s).value, 0.825);
}

TEST(TotalHazardTest, PaperStrictGate) {
  const HazardConfig cfg;
  const SafetyLimits s = limits();
  auto slow = total_hazard(1, 0, 1, 0.3, 0.2, cfg, s);
  EXPECT_EQ(slow.value, 0.0);
  EXPECT_TRUE(slow.gated);
  auto far = total_hazard(0, 1, 1, 1.31, 0.9, cfg, s);
  EXPECT_EQ(far.value, 0.0);
  EXPECT_TRUE(far.gated);
  auto edge = total_hazard(0, 0.5, 1, 1.3, 0.25, cfg, s);
  EXPECT_FALSE(edge.gated);
  EXPECT_EQ(edge.value, 2.5 / 4.0);
}

TEST(TotalHazardTest, Ungated) {
  HazardConfig cfg;
  cfg.gate_mode = GateMode::kUngated;
  const auto r = total_hazard(1, 0, 1, 5.0, 0.0, cfg, limits());
  EXPECT_FALSE(r.gated);
  EXPECT_EQ(r.value, 0.75);
}

TEST(TotalHazardTest, WeightScaleInvariance) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0), k(0.01, 100.0);
  for (int i = 0; i < 2000; ++i) {
    HazardConfig a;
    a.omega = {u(rng), u(rng), u(rng) + 0.01};
    HazardConfig b = a;
    const double scale = k(rng);
    for (auto& w : b.omega) w *= scale;
    const double r1 = u(rng), r2 = u(rng), r3 = u(rng);
    EXPECT_NEAR(total_hazard(r1, r2, r3, 0.3, 0.6, a, limits()).value,
                total_hazard(r1, r2, r3, 0.3, 0.6, b, limits()).value, 1e-14);
  }
}

// --- properties ----------------------------------------------------------------

TEST(HazardProperties, BoundedOnRandomInputs) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> any(-5.0, 5.0), pos(0.0, 5.0), ang(0.0, kPi);
  const SafetyLimits s = limits();
  const RobotModel m = model_with(s);
  HazardConfig per_frame;
  per_frame.d_min_policy = DMinPolicy::kPerFrame;
  for (int i = 0; i < 10000; ++i) {
    const HazardConfig cfg;
    const Vec3 v(any(rng), any(rng), any(rng));
    const Vec3 d = Vec3(any(rng), any(rng), any(rng)).normalized();
    for (double r : {distance_hazard(pos(rng), cfg, m),
                     distance_hazard(pos(rng), resolve_distance_params(per_frame, s, pos(rng))),
                     velocity_magnitude_hazard(pos(rng), s), directional_hazard(v, d),
                     velocity_hazard(v, d, cfg, s), phh_hazard(ang(rng), cfg)}) {
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
    }
  }
}

TEST(HazardProperties, Monotone) {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> v(0.0, 2.0), c(-1.0, 1.0), phh(0.0, kPi / 2);
  const SafetyLimits s = limits();
  const HazardConfig cfg;
  for (int i = 0; i < 10000; ++i) {
    double v1 = v(rng), v2 = v(rng);
    if (v1 > v2) std::swap(v1, v2);
    EXPECT_LE(velocity_magnitude_hazard(v1, s), velocity_magnitude_hazard(v2, s));
    double c1 = c(rng), c2 = c(rng);
    if (c1 > c2) std::swap(c1, c2);
    const Vec3 w1(c1, std::sqrt(1 - c1 * c1), 0), w2(c2, std::sqrt(1 - c2 * c2), 0);
    EXPECT_LE(directional_hazard(w1, kX), directional_hazard(w2, kX));
    double p1 = phh(rng), p2 = phh(rng);
    if (p1 > p2) std::swap(p1, p2);
    EXPECT_LE(phh_hazard(p1, cfg), phh_hazard(p2, cfg));
  }
}

TEST(HazardConfigTest, Validation) {
  const SafetyLimits s = limits();
  EXPECT_NO_THROW(HazardConfig{}.validate(s));
  auto expect_invalid = [&](auto mutate) {
    HazardConfig c;
    mutate(c);
    try {
      c.validate(s);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    }
  };
  expect_invalid([](HazardConfig& c) { c.epsilon_reach = 0.0; });
  expect_invalid([](HazardConfig& c) { c.epsilon_reach = 1.0; });
  expect_invalid([](HazardConfig& c) { c.beta = 1.5; });
  expect_invalid([](HazardConfig& c) { c.c = 0.0; });
  expect_invalid([](HazardConfig& c) { c.omega = {0.0, 0.0, 0.0}; });
  expect_invalid([](HazardConfig& c) { c.omega = {1.0, -1.0, 1.0}; });
  expect_invalid([](HazardConfig& c) { c.d_min = -0.1; });
  expect_invalid([](HazardConfig& c) { c.d_min = 1.3; });
}

TEST(Flags, RenderAndParse) {
  FrameFlags f;
  EXPECT_EQ(f.to_string(), "");
  f.set(FrameFlag::kGatedZero);
  f.set(FrameFlag::kEstimatedVelocity);
  EXPECT_EQ(f.to_string(), "estimated-velocity|gated-zero");
  EXPECT_EQ(FrameFlags::parse("estimated-velocity|gated-zero"), f);
  EXPECT_EQ(FrameFlags::parse(""), FrameFlags{});
  EXPECT_THROW(FrameFlags::parse("bogus"), Error);
  FrameFlags all;
  for (auto x : {FrameFlag::kEstimatedVelocity, FrameFlag::kContactSingularity, FrameFlag::kGatedZero,
                 FrameFlag::kDegeneratePhh})
    all.set(x);
  EXPECT_EQ(all.to_string(), "estimated-velocity|contact-singularity|gated-zero|phh-degenerate");
  EXPECT_EQ(FrameFlags::parse(all.to_string()), all);
}
