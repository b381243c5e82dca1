#include "advstab/ratefit.hpp"

#include <cmath>

namespace advstab {

LineFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw InvalidParameter("fit_linear: need >= 2 paired points");
    const int n = static_cast<int>(xs.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += xs[static_cast<std::size_t>(i)];
        my += ys[static_cast<std::size_t>(i)];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = xs[static_cast<std::size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
    }
    if (sxx == 0.0) throw InvalidParameter("fit_linear: degenerate abscissae");

    LineFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double ss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = ys[static_cast<std::size_t>(i)] - fit.intercept -
                             fit.slope * xs[static_cast<std::size_t>(i)];
            ss += r * r;
        }
        fit.slope_stderr = std::sqrt(ss / (n - 2) / sxx);
    }
    fit.ci95 = 1.96 * fit.slope_stderr;
    return fit;
}

LineFit fit_loglog_rate(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 3) throw InvalidParameter("fit_loglog_rate: need >= 3 points");
    std::vector<double> xs, ys;
    xs.reserve(series.size());
    ys.reserve(series.size());
    for (const auto& [eps, value] : series) {
        if (!(eps > 0.0)) throw InvalidParameter("fit_loglog_rate: eps must be > 0");
        if (!(value > 0.0)) throw InvalidParameter("fit_loglog_rate: nonpositive value");
        xs.push_back(std::log(eps));
        ys.push_back(std::log(value));
    }
    return fit_linear(xs, ys);
}

} // namespace advstab
