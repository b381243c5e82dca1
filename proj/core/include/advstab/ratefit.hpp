#pragma once

#include <utility>
#include <vector>

#include "advstab/error.hpp"

namespace advstab {

/// Least-squares line fit with the standard error of the slope.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    /// 95% half-width, 1.96 * stderr (normal approximation).
    double ci95 = 0.0;
    int points = 0;
};

LineFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

/// Slope of log(value) against log(eps). Requires >= 3 points with positive
/// values; a nonpositive value is a domain error.
LineFit fit_loglog_rate(const std::vector<std::pair<double, double>>& series);

} // namespace advstab
