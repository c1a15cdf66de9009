#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hrc/error.hpp"
#include "hrc/frame_io.hpp"
#include "hrc/scene.hpp"

using namespace hrc;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no hrc::Error thrown";
  return ErrorCode::kIoError;
}

}  // namespace

TEST(Scene, ValidFrameMatchingDimensions) {
  const auto& model = fixtures::ur10();
  const SceneFrame f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  EXPECT_NO_THROW(validate_frame(f, model));
}

TEST(Scene, ValidationIsIdempotent) {
  const auto& model = fixtures::ur10();
  const SceneFrame f = fixtures::make_frame(0.5, Vec3(2, 0, 0), model);
  const SceneFrame& once = validate_frame(f, model);
  const SceneFrame& twice = validate_frame(once, model);
  EXPECT_EQ(&once, &twice);
  EXPECT_EQ(twice.t, f.t);
}

TEST(Scene, WrongJointCount) {
  const auto& model = fixtures::ur10();
  SceneFrame f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.robot.q = Eigen::VectorXd::Zero(5);
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kDimensionMismatch);
  f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.robot.qd = Eigen::VectorXd::Zero(7);
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kDimensionMismatch);
}

TEST(Scene, NonUnitGaze) {
  const auto& model = fixtures::ur10();
  SceneFrame f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.head.gaze = Vec3(0.5, 0, 0);
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kNonUnitGaze);
}

TEST(Scene, NonFiniteValues) {
  const auto& model = fixtures::ur10();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SceneFrame f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.human.joints["head"].x() = nan;
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kNonFiniteValue);
  f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.robot.q[2] = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kNonFiniteValue);
  f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.t = nan;
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kNonFiniteValue);
}

TEST(Scene, MissingJointRejected) {
  const auto& model = fixtures::ur10();
  SceneFrame f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.human.joints.erase("l_knee");
  EXPECT_EQ(code_of([&] { validate_frame(f, model); }), ErrorCode::kInvalidSkeleton);
}

TEST(Scene, StreamRejectsNonMonotoneTimestamps) {
  const auto& model = fixtures::ur10();
  StreamValidator v(model);
  v.accept(fixtures::make_frame(1.0, Vec3(2, 0, 0), model));
  try {
    v.accept(fixtures::make_frame(0.9, Vec3(2, 0, 0), model));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonMonotoneTimestamp);
    ASSERT_TRUE(e.frame_index().has_value());
    EXPECT_EQ(*e.frame_index(), 1u);
  }
  EXPECT_EQ(v.accepted(), 1u);
}

TEST(Scene, StreamRejectsRepeatedAndNegativeTimestamps) {
  const auto& model = fixtures::ur10();
  StreamValidator v(model);
  EXPECT_EQ(code_of([&] { v.accept(fixtures::make_frame(-0.1, Vec3(2, 0, 0), model)); }),
            ErrorCode::kNonMonotoneTimestamp);
  StreamValidator w(model);
  w.accept(fixtures::make_frame(0.2, Vec3(2, 0, 0), model));
  EXPECT_EQ(code_of([&] { w.accept(fixtures::make_frame(0.2, Vec3(2, 0, 0), model)); }),
            ErrorCode::kNonMonotoneTimestamp);
}

TEST(Scene, AcceptedStreamIsStrictlyIncreasing) {
  const auto& model = fixtures::ur10();
  StreamValidator v(model);
  double last = -1.0;
  for (int i = 0; i < 50; ++i) {
    const SceneFrame& f = v.accept(fixtures::make_frame(0.1 * i, Vec3(2, 0, 0), model));
    EXPECT_GT(f.t, last);
    last = f.t;
  }
}

TEST(Skeleton, DefaultHumanoidHasFourteenSegments) {
  const auto topo = SkeletonTopology::default_humanoid();
  ASSERT_EQ(topo->size(), 14u);
  for (const auto& s : topo->segments()) {
    const bool big = s.name == "head" || s.name == "torso";
    EXPECT_DOUBLE_EQ(s.radius, big ? 0.10 : 0.05) << s.name;
  }
  EXPECT_EQ(topo->find("r_forearm"), std::optional<std::size_t>(7));
}

TEST(Skeleton, InvalidTopologies) {
  EXPECT_EQ(code_of([] { SkeletonTopology t({}); }), ErrorCode::kInvalidSkeleton);
  EXPECT_EQ(code_of([] { SkeletonTopology t({{"x", "a", "b", 0.0}}); }), ErrorCode::kInvalidSkeleton);
  EXPECT_EQ(code_of([] { SkeletonTopology t({{"x", "a", "b", -0.1}}); }), ErrorCode::kInvalidSkeleton);
}

TEST(Skeleton, CapsulesFollowTopologyOrder) {
  const auto h = fixtures::standing_human(Vec3(1, 2, 0));
  const auto caps = h.capsules();
  const auto& segs = h.topology->segments();
  ASSERT_EQ(caps.size(), segs.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    EXPECT_EQ(caps[i].a, h.joints.at(segs[i].from));
    EXPECT_EQ(caps[i].b, h.joints.at(segs[i].to));
    EXPECT_EQ(caps[i].radius, segs[i].radius);
  }
}

TEST(HeadPoseTest, FromYawIsHorizontalUnit) {
  const HeadPose p = HeadPose::from_yaw(Vec3(1, 1, 1), 0.7);
  EXPECT_NEAR(p.gaze.norm(), 1.0, 1e-15);
  EXPECT_EQ(p.gaze.z(), 0.0);
  EXPECT_NEAR(std::atan2(p.gaze.y(), p.gaze.x()), 0.7, 1e-15);
}

TEST(FrameIo, RoundTripIsExact) {
  const auto& model = fixtures::ur10();
  SceneFrame f = fixtures::make_frame(0.1, Vec3(2.123456789, -0.1, 0.3), model);
  f.robot.q << 0.1, -1.0 / 3.0, 2.0, 1e-17, -3.14159, 0.5;
  f.head = HeadPose::from_yaw(Vec3(0.3, 0.2, 1.7), 2.0 / 3.0);
  const SceneFrame g = parse_frame(format_frame(f), SkeletonTopology::default_humanoid());
  EXPECT_EQ(g.t, f.t);
  EXPECT_EQ(g.human.joints, f.human.joints);
  EXPECT_EQ(g.head.position, f.head.position);
  EXPECT_EQ(g.head.gaze, f.head.gaze);
  EXPECT_EQ(g.robot.q, f.robot.q);
  ASSERT_TRUE(g.robot.qd.has_value());
  EXPECT_EQ(*g.robot.qd, *f.robot.qd);
}

TEST(FrameIo, YawDegreesConvertedOnIngest) {
  const auto& model = fixtures::ur10();
  SceneFrame f = fixtures::make_frame(0.0, Vec3(2, 0, 0), model);
  f.robot.qd.reset();
  std::string line = format_frame(f);
  const auto pos = line.find("\"gaze\"");
  ASSERT_NE(pos, std::string::npos);
  const auto end = line.find(']', pos);
  line.replace(pos, end - pos + 1, "\"yaw_deg\":90");
  const SceneFrame g = parse_frame(line, SkeletonTopology::default_humanoid());
  EXPECT_NEAR(g.head.gaze.x(), 0.0, 1e-15);
  EXPECT_NEAR(g.head.gaze.y(), 1.0, 1e-15);
  EXPECT_EQ(g.head.gaze.z(), 0.0);
  EXPECT_FALSE(g.robot.qd.has_value());
}

TEST(FrameIo, MalformedLines) {
  const auto topo = SkeletonTopology::default_humanoid();
  EXPECT_EQ(code_of([&] { parse_frame("not json", topo); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([&] { parse_frame(R"({"t":0})", topo); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([&] {
              parse_frame(R"({"t":0,"human":{"joints":{}},"head":{"position":[0,0,0],"gaze":[1,0,0],"yaw_deg":3},"robot":{"q":[0]}})",
                          topo);
            }),
            ErrorCode::kParseError);
}

TEST(FrameIo, ReaderReportsFrameIndex) {
  const auto& model = fixtures::ur10();
  std::stringstream ss;
  for (int i = 0; i < 3; ++i) ss << format_frame(fixtures::make_frame(i, Vec3(2, 0, 0), model)) << "\n\n";
  ss << "{broken\n";
  FrameReader reader(ss, SkeletonTopology::default_humanoid());
  int n = 0;
  try {
    while (reader.next()) ++n;
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.frame_index(), std::optional<std::size_t>(3));
    EXPECT_NE(std::string(e.what()).find("frame 3"), std::string::npos);
  }
  EXPECT_EQ(n, 3);
}
