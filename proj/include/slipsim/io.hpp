#pragma once

#include <string>
#include <vector>

#include "slipsim/bvp.hpp"
#include "slipsim/model.hpp"
#include "slipsim/verify.hpp"

namespace slip::io {

/// Shortest round-trippable decimal form (17 significant digits).
std::string fmt(double value);

/// Writes content atomically: temp file in the same directory, then rename.
void write_file(const std::string& path, const std::string& content);

/// Comment lines (prefixed '#') echoing the full invocation so the file can
/// be reproduced bit-identically.
std::string csv_header(const std::string& tool_line,
                       const std::vector<std::string>& config_lines,
                       const std::string& columns);

/// t, tau_plus, theta, theta_dot, L, L_dot, energy — one row per grid point.
std::string trajectory_csv(const Trajectory& traj, const std::string& tool_line);

std::string solution_json(const StanceSolution& sol, const std::string& tool_line);
std::string approx_json(double alpha, double U, double V, double k_approx,
                        const std::string& tool_line);

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& tool_line);

std::string report_csv(const std::vector<const ConvergenceReport*>& reports,
                       const std::string& tool_line);
std::string report_slopes_json(const std::vector<const ConvergenceReport*>& reports,
                               const std::string& tool_line);

std::string ratio_csv(const std::vector<RatioRow>& rows, const std::string& tool_line);

}  // namespace slip::io
