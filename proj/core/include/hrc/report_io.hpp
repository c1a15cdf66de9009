#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrc/pipeline.hpp"

namespace hrc {

inline constexpr std::string_view kFrameCsvHeader =
    "t,d_H,v_mag,cos_theta,phh_deg,r_D,r_V,r_PHH,R_total,closest_link,closest_segment,flags";

inline constexpr std::string_view kComparisonCsvHeader =
    "t_a,t_b,delta_r_D,delta_r_V,delta_r_PHH,delta_R_total";

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

void write_frame_csv(std::ostream& out, std::span<const FrameHazard> frames);

// Reads a CSV written by write_frame_csv. Throws Error(kParseError) on a
// header mismatch or malformed row.
std::vector<FrameHazard> read_frame_csv(std::istream& in);

// Summary, processing mode and the resolved configuration as JSON.
std::string summary_json(const ScenarioReport& report);

void write_comparison_csv(std::ostream& out, const ScenarioComparison& comparison);
std::string comparison_json(const ScenarioComparison& comparison);

}  // namespace hrc
