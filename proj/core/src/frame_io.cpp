#include "hrc/frame_io.hpp"

#include <nlohmann/json.hpp>

#include "hrc/error.hpp"
#include "hrc/hazard.hpp"

namespace hrc {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::kParseError, msg); }

const json& member(const json& obj, const char* key, const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(context + " is missing \"" + key + "\"");
  return *it;
}

double number(const json& v, const std::string& context) {
  if (!v.is_number()) parse_fail(context + " must be a number");
  return v.get<double>();
}

Vec3 vec3(const json& v, const std::string& context) {
  if (!v.is_array() || v.size() != 3) parse_fail(context + " must be an array of 3 numbers");
  return {number(v[0], context), number(v[1], context), number(v[2], context)};
}

Eigen::VectorXd vector(const json& v, const std::string& context) {
  if (!v.is_array()) parse_fail(context + " must be an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = number(v[i], context);
  return out;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

SceneFrame parse_frame(std::string_view line, std::shared_ptr<const SkeletonTopology> topology) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("frame must be a JSON object");

  SceneFrame frame;
  frame.t = number(member(doc, "t", "frame"), "t");

  const auto& human = member(doc, "human", "frame");
  const auto& joints = member(human, "joints", "human");
  if (!joints.is_object()) parse_fail("human.joints must be an object");
  for (const auto& [name, pos] : joints.items()) {
    frame.human.joints.emplace(name, vec3(pos, "joint '" + name + "'"));
  }
  frame.human.topology = std::move(topology);

  const auto& head = member(doc, "head", "frame");
  frame.head.position = vec3(member(head, "position", "head"), "head.position");
  const bool has_gaze = head.contains("gaze");
  const bool has_yaw = head.contains("yaw_deg");
  if (has_gaze == has_yaw) parse_fail("head needs exactly one of \"gaze\" or \"yaw_deg\"");
  if (has_gaze) {
    frame.head.gaze = vec3(head["gaze"], "head.gaze");
  } else {
    frame.head = HeadPose::from_yaw(frame.head.position,
                                    number(head["yaw_deg"], "head.yaw_deg") * kDegToRad);
  }

  const auto& robot = member(doc, "robot", "frame");
  frame.robot.q = vector(member(robot, "q", "robot"), "robot.q");
  if (const auto it = robot.find("qd"); it != robot.end() && !it->is_null()) {
    frame.robot.qd = vector(*it, "robot.qd");
  }
  return frame;
}

std::string format_frame(const SceneFrame& frame) {
  json joints = json::object();
  for (const auto& [name, p] : frame.human.joints) joints[name] = to_json(p);
  json robot = {{"q", to_json(frame.robot.q)}};
  if (frame.robot.qd) robot["qd"] = to_json(*frame.robot.qd);
  const json doc = {
      {"t", frame.t},
      {"human", {{"joints", std::move(joints)}}},
      {"head", {{"position", to_json(frame.head.position)}, {"gaze", to_json(frame.head.gaze)}}},
      {"robot", std::move(robot)},
  };
  return doc.dump();
}

FrameReader::FrameReader(std::istream& in, std::shared_ptr<const SkeletonTopology> topology)
    : in_(&in), topology_(std::move(topology)) {}

std::optional<SceneFrame> FrameReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto frame = parse_frame(line, topology_);
      ++index_;
      return frame;
    } catch (const Error& e) {
      throw e.at_frame(index_);
    }
  }
  if (in_->bad()) throw Error(ErrorCode::kIoError, "read error in frame stream");
  return std::nullopt;
}

std::vector<SceneFrame> read_frames(std::istream& in,
                                    std::shared_ptr<const SkeletonTopology> topology) {
  FrameReader reader(in, std::move(topology));
  std::vector<SceneFrame> frames;
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  return frames;
}

void write_frames(std::ostream& out, std::span<const SceneFrame> frames) {
  for (const auto& f : frames) out << format_frame(f) << '\n';
}

}  // namespace hrc
