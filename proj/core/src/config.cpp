#include "hrc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Geometry>

#include "hrc/error.hpp"
#include "toml_lite.hpp"

namespace hrc {
namespace {

[[noreturn]] void config_fail(const std::string& msg) {
  throw Error(ErrorCode::kInvalidConfig, msg);
}

void reject_unknown(const toml::Table& table, std::initializer_list<std::string_view> allowed,
                    const std::string& context) {
  for (const auto& [key, value] : table) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) config_fail("unknown key '" + key + "' in " + context);
  }
}

const toml::Table* table_at(const toml::Table& root, const std::string& key) {
  const auto it = root.find(key);
  if (it == root.end()) return nullptr;
  if (!it->second.is_table()) config_fail("'" + key + "' must be a table");
  return &std::get<toml::Table>(it->second.data);
}

const toml::Array* tables_at(const toml::Table& root, const std::string& key) {
  const auto it = root.find(key);
  if (it == root.end()) return nullptr;
  if (!it->second.is_array()) config_fail("'" + key + "' must be an array of tables ([[" + key + "]])");
  return &std::get<toml::Array>(it->second.data);
}

std::optional<double> number(const toml::Table& t, const std::string& key, const std::string& ctx) {
  const auto it = t.find(key);
  if (it == t.end()) return std::nullopt;
  if (!it->second.is_number()) config_fail(ctx + "." + key + " must be a number");
  return std::get<double>(it->second.data);
}

double required_number(const toml::Table& t, const std::string& key, const std::string& ctx) {
  const auto v = number(t, key, ctx);
  if (!v) config_fail(ctx + "." + key + " is required");
  return *v;
}

std::optional<std::string> string(const toml::Table& t, const std::string& key,
                                  const std::string& ctx) {
  const auto it = t.find(key);
  if (it == t.end()) return std::nullopt;
  if (!it->second.is_string()) config_fail(ctx + "." + key + " must be a string");
  return std::get<std::string>(it->second.data);
}

std::optional<std::vector<double>> numbers(const toml::Table& t, const std::string& key,
                                           const std::string& ctx) {
  const auto it = t.find(key);
  if (it == t.end()) return std::nullopt;
  if (!it->second.is_array()) config_fail(ctx + "." + key + " must be an array");
  std::vector<double> out;
  for (const auto& v : std::get<toml::Array>(it->second.data)) {
    if (!v.is_number()) config_fail(ctx + "." + key + " must contain numbers");
    out.push_back(std::get<double>(v.data));
  }
  return out;
}

Vec3 vec3(const toml::Table& t, const std::string& key, const std::string& ctx, const Vec3& dflt) {
  const auto v = numbers(t, key, ctx);
  if (!v) return dflt;
  if (v->size() != 3) config_fail(ctx + "." + key + " must have 3 entries");
  return {(*v)[0], (*v)[1], (*v)[2]};
}

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open " + std::string(what) + " '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

RobotModel parse_robot_model(std::string_view text) {
  const auto root = toml::parse(text);
  reject_unknown(root, {"name", "base", "joint", "safety", "geometry"}, "robot model");

  RobotModel model;
  model.name = string(root, "name", "robot").value_or("robot");

  if (const auto* base = table_at(root, "base")) {
    reject_unknown(*base, {"xyz", "rpy_deg"}, "[base]");
    const Vec3 xyz = vec3(*base, "xyz", "base", Vec3::Zero());
    const Vec3 rpy = vec3(*base, "rpy_deg", "base", Vec3::Zero()) * kDegToRad;
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.linear() = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                     Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                     Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
                        .toRotationMatrix();
    pose.translation() = xyz;
    model.base_pose = pose;
  }

  if (const auto* joints = tables_at(root, "joint")) {
    for (std::size_t i = 0; i < joints->size(); ++i) {
      const auto& v = (*joints)[i];
      if (!v.is_table()) config_fail("[[joint]] entries must be tables");
      const auto& jt = std::get<toml::Table>(v.data);
      const std::string ctx = "joint[" + std::to_string(i) + "]";
      reject_unknown(jt, {"a", "alpha_deg", "d", "theta_offset_deg"}, ctx);
      DhJoint j;
      j.a = required_number(jt, "a", ctx);
      j.alpha = required_number(jt, "alpha_deg", ctx) * kDegToRad;
      j.d = required_number(jt, "d", ctx);
      j.theta_offset = number(jt, "theta_offset_deg", ctx).value_or(0.0) * kDegToRad;
      model.joints.push_back(j);
    }
  }

  const auto* safety = table_at(root, "safety");
  if (safety == nullptr) config_fail("robot model needs a [safety] table");
  reject_unknown(*safety, {"v_min", "v_max", "t_stop", "d_reach"}, "[safety]");
  model.safety.v_min = number(*safety, "v_min", "safety").value_or(0.25);
  model.safety.v_max = number(*safety, "v_max", "safety").value_or(1.0);
  model.safety.t_stop = required_number(*safety, "t_stop", "safety");
  model.safety.d_reach = required_number(*safety, "d_reach", "safety");

  const auto* geometry = table_at(root, "geometry");
  if (geometry == nullptr) config_fail("robot model needs a [geometry] table");
  reject_unknown(*geometry, {"link_radii"}, "[geometry]");
  const auto radii = numbers(*geometry, "link_radii", "geometry");
  if (!radii) config_fail("geometry.link_radii is required");
  model.link_radii = *radii;

  model.validate();
  return model;
}

RobotModel load_robot_model(const std::filesystem::path& path) {
  const auto text = read_file(path, "robot config");
  try {
    return parse_robot_model(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

AnalysisConfig parse_analysis_config(std::string_view text) {
  const auto root = toml::parse(text);
  reject_unknown(root, {"hazard", "pipeline", "segment"}, "analysis config");

  AnalysisConfig cfg;
  if (const auto* h = table_at(root, "hazard")) {
    reject_unknown(*h,
                   {"epsilon_reach", "beta", "c_deg", "omega", "d_min_policy", "gate_mode", "d_min"},
                   "[hazard]");
    auto& hz = cfg.hazard;
    hz.epsilon_reach = number(*h, "epsilon_reach", "hazard").value_or(hz.epsilon_reach);
    hz.beta = number(*h, "beta", "hazard").value_or(hz.beta);
    if (const auto c = number(*h, "c_deg", "hazard")) hz.c = *c * kDegToRad;
    if (const auto w = numbers(*h, "omega", "hazard")) {
      if (w->size() != 3) config_fail("hazard.omega must have 3 entries");
      hz.omega = {(*w)[0], (*w)[1], (*w)[2]};
    }
    if (const auto p = string(*h, "d_min_policy", "hazard")) {
      const auto policy = parse_d_min_policy(*p);
      if (!policy) config_fail("hazard.d_min_policy must be \"static\" or \"per-frame\"");
      hz.d_min_policy = *policy;
    }
    if (const auto g = string(*h, "gate_mode", "hazard")) {
      const auto mode = parse_gate_mode(*g);
      if (!mode) config_fail("hazard.gate_mode must be \"paper-strict\" or \"ungated\"");
      hz.gate_mode = *mode;
    }
    hz.d_min = number(*h, "d_min", "hazard");
  }

  if (const auto* p = table_at(root, "pipeline")) {
    reject_unknown(*p, {"threads", "velocity_smoothing_window"}, "[pipeline]");
    auto as_count = [](double v, const char* key) {
      if (!(v >= 0.0) || v != std::floor(v) || v > 1e6) {
        config_fail(std::string("pipeline.") + key + " must be a non-negative integer");
      }
      return static_cast<std::size_t>(v);
    };
    if (const auto t = number(*p, "threads", "pipeline")) {
      cfg.pipeline.threads = static_cast<unsigned>(std::max<std::size_t>(1, as_count(*t, "threads")));
    }
    if (const auto w = number(*p, "velocity_smoothing_window", "pipeline")) {
      cfg.pipeline.velocity_smoothing_window = as_count(*w, "velocity_smoothing_window");
    }
  }

  if (const auto* segments = tables_at(root, "segment")) {
    std::vector<LimbSegment> limbs;
    std::set<std::string> names;
    for (std::size_t i = 0; i < segments->size(); ++i) {
      const auto& v = (*segments)[i];
      if (!v.is_table()) config_fail("[[segment]] entries must be tables");
      const auto& st = std::get<toml::Table>(v.data);
      const std::string ctx = "segment[" + std::to_string(i) + "]";
      reject_unknown(st, {"name", "from", "to", "radius"}, ctx);
      LimbSegment s;
      s.from = string(st, "from", ctx).value_or("");
      s.to = string(st, "to", ctx).value_or("");
      s.name = string(st, "name", ctx).value_or(s.from + "-" + s.to);
      s.radius = required_number(st, "radius", ctx);
      if (!names.insert(s.name).second) config_fail("duplicate segment name '" + s.name + "'");
      limbs.push_back(std::move(s));
    }
    try {
      cfg.skeleton = std::make_shared<const SkeletonTopology>(std::move(limbs));
    } catch (const Error& e) {
      config_fail(e.what());
    }
  }
  return cfg;
}

AnalysisConfig load_analysis_config(const std::filesystem::path& path) {
  const auto text = read_file(path, "analysis config");
  try {
    return parse_analysis_config(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace hrc
