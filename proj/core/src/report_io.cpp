#include "hrc/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "hrc/error.hpp"

namespace hrc {

using nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_frame_csv(std::ostream& out, std::span<const FrameHazard> frames) {
  out << kFrameCsvHeader << '\n';
  for (const auto& f : frames) {
    out << format_number(f.t) << ',' << format_number(f.d_h) << ',' << format_number(f.v_mag) << ','
        << format_number(f.cos_theta) << ',' << format_number(f.phh / kDegToRad) << ','
        << format_number(f.r_d) << ',' << format_number(f.r_v) << ',' << format_number(f.r_phh)
        << ',' << format_number(f.r_total) << ',' << f.closest_link << ',' << f.closest_segment
        << ',' << f.flags.to_string() << '\n';
  }
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": bad field '" +
                                            std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

ordered_json indicator_json(const IndicatorSummary& s) {
  ordered_json j;
  j["max"] = s.max;
  j["mean"] = s.mean;
  j["time_above_0.5_s"] = s.time_above[0];
  j["time_above_0.8_s"] = s.time_above[1];
  return j;
}

ordered_json summary_body(const ScenarioSummary& s) {
  ordered_json j;
  j["frame_count"] = s.frame_count;
  j["duration_s"] = s.duration;
  j["r_D"] = indicator_json(s.r_d);
  j["r_V"] = indicator_json(s.r_v);
  j["r_PHH"] = indicator_json(s.r_phh);
  j["R_total"] = indicator_json(s.r_total);
  return j;
}

IndicatorSummary difference(const IndicatorSummary& a, const IndicatorSummary& b) {
  return {a.max - b.max, a.mean - b.mean,
          {a.time_above[0] - b.time_above[0], a.time_above[1] - b.time_above[1]}};
}

}  // namespace

std::vector<FrameHazard> read_frame_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty report CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kFrameCsvHeader) throw Error(ErrorCode::kParseError, "unexpected report CSV header");

  std::vector<FrameHazard> frames;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 12) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected 12 fields");
    }
    FrameHazard f;
    f.t = parse_field<double>(fields[0], line_no);
    f.d_h = parse_field<double>(fields[1], line_no);
    f.v_mag = parse_field<double>(fields[2], line_no);
    f.cos_theta = parse_field<double>(fields[3], line_no);
    f.phh = parse_field<double>(fields[4], line_no) * kDegToRad;
    f.r_d = parse_field<double>(fields[5], line_no);
    f.r_v = parse_field<double>(fields[6], line_no);
    f.r_phh = parse_field<double>(fields[7], line_no);
    f.r_total = parse_field<double>(fields[8], line_no);
    f.closest_link = parse_field<std::size_t>(fields[9], line_no);
    f.closest_segment = parse_field<std::size_t>(fields[10], line_no);
    f.flags = FrameFlags::parse(fields[11]);
    if (!frames.empty() && !(f.t > frames.back().t)) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": timestamps must increase");
    }
    frames.push_back(f);
  }
  return frames;
}

std::string summary_json(const ScenarioReport& report) {
  ordered_json j;
  j["summary"] = summary_body(report.summary);
  j["processing_mode"] = std::string(to_string(report.mode));

  const auto& cfg = report.config;
  const double d_min = static_d_min(cfg, report.safety);
  ordered_json hazard;
  hazard["epsilon_reach"] = cfg.epsilon_reach;
  hazard["alpha"] = calibrate_alpha(d_min, report.safety.d_reach, cfg.epsilon_reach);
  hazard["d_min"] = d_min;
  hazard["d_min_policy"] = std::string(to_string(cfg.d_min_policy));
  hazard["beta"] = cfg.beta;
  hazard["c_deg"] = cfg.c / kDegToRad;
  hazard["omega"] = cfg.omega;
  hazard["gate_mode"] = std::string(to_string(cfg.gate_mode));
  j["config"]["hazard"] = hazard;

  ordered_json safety;
  safety["v_min"] = report.safety.v_min;
  safety["v_max"] = report.safety.v_max;
  safety["t_stop"] = report.safety.t_stop;
  safety["d_reach"] = report.safety.d_reach;
  safety["k_v"] = velocity_gain(report.safety);
  j["config"]["safety"] = safety;

  ordered_json pipeline;
  pipeline["threads"] = report.options.threads;
  pipeline["velocity_smoothing_window"] = report.options.velocity_smoothing_window;
  j["config"]["pipeline"] = pipeline;
  return j.dump(2) + "\n";
}

void write_comparison_csv(std::ostream& out, const ScenarioComparison& comparison) {
  out << kComparisonCsvHeader << '\n';
  for (const auto& r : comparison.rows) {
    out << format_number(r.t_a) << ',' << format_number(r.t_b) << ',' << format_number(r.d_r_d)
        << ',' << format_number(r.d_r_v) << ',' << format_number(r.d_r_phh) << ','
        << format_number(r.d_r_total) << '\n';
  }
}

std::string comparison_json(const ScenarioComparison& comparison) {
  ordered_json j;
  j["aligned_frames"] = comparison.rows.size();
  j["dominance_fraction"] = comparison.dominance_fraction;
  ordered_json delta;
  delta["r_D"] = indicator_json(difference(comparison.a.r_d, comparison.b.r_d));
  delta["r_V"] = indicator_json(difference(comparison.a.r_v, comparison.b.r_v));
  delta["r_PHH"] = indicator_json(difference(comparison.a.r_phh, comparison.b.r_phh));
  delta["R_total"] = indicator_json(difference(comparison.a.r_total, comparison.b.r_total));
  j["summary_delta"] = delta;
  j["a"] = summary_body(comparison.a);
  j["b"] = summary_body(comparison.b);
  j["warnings"] = comparison.warnings;
  return j.dump(2) + "\n";
}

}  // namespace hrc
