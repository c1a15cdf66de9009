#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hrc/config.hpp"
#include "hrc/error.hpp"
#include "hrc/frame_io.hpp"
#include "hrc/pipeline.hpp"
#include "hrc/report_io.hpp"
#include "hrc/simulator.hpp"

namespace fs = std::filesystem;

namespace hrc::cli {

std::vector<HeatmapCell> velocity_heatmap(const SafetyLimits& limits, const HazardConfig& cfg,
                                          std::size_t v_steps, std::size_t theta_steps) {
  if (v_steps < 2 || theta_steps < 2) {
    throw Error(ErrorCode::kInvalidConfig, "heatmap grid must be at least 2x2");
  }
  const std::optional<Vec3> toward_human = Vec3::UnitX();
  std::vector<HeatmapCell> cells;
  cells.reserve(v_steps * theta_steps);
  for (std::size_t i = 0; i < v_steps; ++i) {
    const double v = i + 1 == v_steps ? limits.v_max
                                      : limits.v_max * static_cast<double>(i) / static_cast<double>(v_steps - 1);
    for (std::size_t j = 0; j < theta_steps; ++j) {
      const double theta_deg =
          j + 1 == theta_steps ? 180.0 : 180.0 * static_cast<double>(j) / static_cast<double>(theta_steps - 1);
      const double theta = theta_deg * kDegToRad;
      const Vec3 vel(v * std::cos(theta), v * std::sin(theta), 0.0);
      cells.push_back({v, theta_deg, velocity_hazard(vel, toward_human, cfg, limits)});
    }
  }
  return cells;
}

namespace {

struct GlobalOptions {
  std::string robot;
  std::string config;
  std::string out;
  bool quiet = false;
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  body(file);
  file.flush();
  if (!file) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

// Writes to the --out path, or to stdout when none was given.
void emit(const GlobalOptions& g, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (g.out.empty()) {
    body(out);
  } else {
    write_file(g.out, body);
  }
}

RobotModel robot_from(const GlobalOptions& g) {
  if (g.robot.empty()) throw Error(ErrorCode::kInvalidConfig, "--robot is required");
  return load_robot_model(g.robot);
}

AnalysisConfig config_from(const GlobalOptions& g) {
  if (g.config.empty()) return {};
  return load_analysis_config(g.config);
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  auto number = [&](std::string_view s) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "grid must look like NxM, got '" + text + "'");
    }
    return value;
  };
  if (x == std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "grid must look like NxM, got '" + text + "'");
  }
  const std::string_view view(text);
  return {number(view.substr(0, x)), number(view.substr(x + 1))};
}

fs::path frames_csv_path(const fs::path& p) {
  return fs::is_directory(p) ? p / "frames.csv" : p;
}

int cmd_analyze(const GlobalOptions& g, const std::string& input, std::optional<unsigned> threads,
                std::ostream& err) {
  const RobotModel model = robot_from(g);
  AnalysisConfig cfg = config_from(g);
  if (threads) cfg.pipeline.threads = *threads;
  if (g.out.empty()) throw Error(ErrorCode::kInvalidConfig, "analyze needs --out <directory>");

  auto in = open_input(input);
  const auto frames = read_frames(in, cfg.skeleton);
  const ScenarioReport report = analyze_scenario(frames, model, cfg.hazard, cfg.pipeline);

  const fs::path dir(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "frames.csv", [&](std::ostream& o) { write_frame_csv(o, report.frames); });
  write_file(dir / "summary.json", [&](std::ostream& o) { o << summary_json(report); });
  if (!g.quiet) {
    err << "analyzed " << report.frames.size() << " frames (" << to_string(report.mode) << ") -> "
        << dir.string() << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const GlobalOptions& g, const ScenarioSpec& spec, std::ostream& out,
                 std::ostream& err) {
  spec.validate();
  const RobotModel model = robot_from(g);
  const auto frames = generate(spec, model);
  emit(g, out, [&](std::ostream& o) { write_frames(o, frames); });
  if (!g.quiet) {
    err << "generated " << frames.size() << " frames (" << to_string(spec.kind) << ", "
        << to_string(spec.variant) << ", seed " << spec.seed << ")\n";
  }
  return kExitOk;
}

int cmd_heatmap(const GlobalOptions& g, const std::string& grid, std::ostream& out) {
  const auto [n, m] = parse_grid(grid);
  const RobotModel model = robot_from(g);
  const AnalysisConfig cfg = config_from(g);
  cfg.hazard.validate(model.safety);
  const auto cells = velocity_heatmap(model.safety, cfg.hazard, n, m);
  emit(g, out, [&](std::ostream& o) {
    o << "v,theta_deg,r_V\n";
    for (const auto& c : cells) {
      o << format_number(c.v) << ',' << format_number(c.theta_deg) << ',' << format_number(c.r_v)
        << '\n';
    }
  });
  return kExitOk;
}

int cmd_calibrate(const GlobalOptions& g, std::optional<double> epsilon, std::ostream& out) {
  const RobotModel model = robot_from(g);
  AnalysisConfig cfg = config_from(g);
  if (epsilon) cfg.hazard.epsilon_reach = *epsilon;
  cfg.hazard.validate(model.safety);
  const SafetyLimits& s = model.safety;
  const double d_min = static_d_min(cfg.hazard, s);
  out << "d_min " << format_number(d_min) << " m\n";
  out << "d_reach " << format_number(s.d_reach) << " m\n";
  out << "epsilon_reach " << format_number(cfg.hazard.epsilon_reach) << '\n';
  out << "alpha " << format_number(calibrate_alpha(d_min, s.d_reach, cfg.hazard.epsilon_reach))
      << " 1/m\n";
  out << "k_V " << format_number(velocity_gain(s)) << " s^2/m^2\n";
  return kExitOk;
}

int cmd_compare(const GlobalOptions& g, const std::string& a_path, const std::string& b_path,
                std::ostream& out, std::ostream& err) {
  auto in_a = open_input(frames_csv_path(a_path));
  auto in_b = open_input(frames_csv_path(b_path));
  const auto a = read_frame_csv(in_a);
  const auto b = read_frame_csv(in_b);
  const ScenarioComparison cmp = compare_scenarios(a, b);
  emit(g, out, [&](std::ostream& o) { write_comparison_csv(o, cmp); });
  if (!g.out.empty()) {
    fs::path json_path(g.out);
    json_path.replace_extension(".json");
    write_file(json_path, [&](std::ostream& o) { o << comparison_json(cmp); });
  }
  for (const auto& w : cmp.warnings) err << "warning: " << w << '\n';
  if (!g.quiet) {
    err << "aligned " << cmp.rows.size() << " frames, A > B in "
        << format_number(cmp.dominance_fraction) << " of them\n";
  }
  return kExitOk;
}

int exit_code_for(const Error& e) {
  if (e.code() == ErrorCode::kIoError) return kExitIo;
  if (is_frame_error(e.code())) return kExitValidation;
  return kExitConfig;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hazard analysis for human-robot collaboration scenes"};
  app.name("hrc_hazard");
  app.require_subcommand(1);

  // Global flags are accepted before or after the subcommand and show up in
  // every command's help.
  GlobalOptions g;
  auto add_globals = [&g](CLI::App* cmd) {
    cmd->add_option("--robot", g.robot, "Robot model file (TOML: DH chain in m/deg, safety limits in m, m/s, s)");
    cmd->add_option("--config", g.config, "Analysis config file (TOML); falls back to $HRC_HAZARD_CONFIG");
    cmd->add_option("--out", g.out, "Output path (directory for analyze, file otherwise; stdout if omitted)");
    cmd->add_flag("--quiet", g.quiet, "Suppress progress messages on stderr");
  };
  add_globals(&app);

  std::string input;
  std::optional<unsigned> threads;
  auto* analyze = app.add_subcommand("analyze", "Evaluate every frame of a JSON Lines scene file; writes frames.csv and summary.json");
  analyze->add_option("--input", input, "Scene frames (JSON Lines; positions in m, angles in rad, t in s)")->required();
  analyze->add_option("--threads", threads, "Worker threads (count); frames with joint velocities are evaluated in parallel")
      ->check(CLI::PositiveNumber);

  ScenarioSpec spec;
  std::string kind = "handover";
  std::string variant = "non-dangerous";
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic scenario as JSON Lines frames");
  simulate->add_option("--kind", kind, "Scenario kind: handover | collaboration | coexistence")
      ->capture_default_str();
  simulate->add_option("--variant", variant, "Variant: dangerous | non-dangerous")->capture_default_str();
  simulate->add_option("--duration", spec.duration, "Scenario length in s")->capture_default_str();
  simulate->add_option("--rate", spec.rate, "Frame rate in frames/s")->capture_default_str();
  simulate->add_option("--seed", spec.seed, "Noise seed (integer)")->capture_default_str();

  std::string grid = "101x181";
  auto* heatmap = app.add_subcommand("heatmap", "Velocity indicator over speed and direction; CSV v (m/s), theta_deg (deg), r_V");
  heatmap->add_option("--grid", grid, "Grid size NxM: N speeds in [0, V_max] m/s, M angles in [0, 180] deg")
      ->capture_default_str();

  std::optional<double> epsilon;
  auto* calibrate = app.add_subcommand("calibrate", "Print d_min (m), alpha (1/m) and k_V (s^2/m^2) for the robot");
  calibrate->add_option("--epsilon", epsilon, "Distance indicator value just inside d_reach (dimensionless, 0..1)");

  std::string a_path;
  std::string b_path;
  auto* compare = app.add_subcommand("compare", "Align two frames.csv reports by time and difference their indicators; JSON summary next to --out");
  compare->add_option("--a", a_path, "Report A: frames.csv or analyze output directory")->required();
  compare->add_option("--b", b_path, "Report B: frames.csv or analyze output directory")->required();

  for (auto* cmd : {analyze, simulate, heatmap, calibrate, compare}) add_globals(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (g.config.empty()) {
    if (const char* env = std::getenv("HRC_HAZARD_CONFIG"); env != nullptr) g.config = env;
  }

  try {
    if (*analyze) return cmd_analyze(g, input, threads, err);
    if (*simulate) {
      const auto k = parse_scenario_kind(kind);
      const auto v = parse_variant(variant);
      if (!k) throw Error(ErrorCode::kInvalidConfig, "unknown scenario kind '" + kind + "'");
      if (!v) throw Error(ErrorCode::kInvalidConfig, "unknown variant '" + variant + "'");
      spec.kind = *k;
      spec.variant = *v;
      return cmd_simulate(g, spec, out, err);
    }
    if (*heatmap) return cmd_heatmap(g, grid, out);
    if (*calibrate) return cmd_calibrate(g, epsilon, out);
    if (*compare) return cmd_compare(g, a_path, b_path, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace hrc::cli
