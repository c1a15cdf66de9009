#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "hrc/hazard.hpp"
#include "hrc/kinematics.hpp"

namespace hrc::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConfig = 3;

struct HeatmapCell {
  double v = 0.0;          // m/s
  double theta_deg = 0.0;  // angle between velocity and worst-case direction
  double r_v = 0.0;
};

// Velocity indicator over v in [0, V_max] (rows) and theta in [0, 180] deg
// (columns), row-major. Both counts must be at least 2.
std::vector<HeatmapCell> velocity_heatmap(const SafetyLimits& limits, const HazardConfig& cfg,
                                          std::size_t v_steps, std::size_t theta_steps);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hrc::cli
