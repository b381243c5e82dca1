#pragma once

#include <string>
#include <vector>

namespace advstab {

/// Minimal standalone log-log scatter plot with optional fitted line.
/// Points with nonpositive coordinates are skipped.
std::string svg_loglog_plot(const std::string& title,
                            const std::vector<std::pair<double, double>>& points,
                            double fit_slope, double fit_intercept, bool draw_fit);

} // namespace advstab
