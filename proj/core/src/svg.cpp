#include "advstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace advstab {

std::string svg_loglog_plot(const std::string& title,
                            const std::vector<std::pair<double, double>>& points,
                            double fit_slope, double fit_intercept, bool draw_fit) {
    const int W = 480, H = 360, M = 48;
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : points)
        if (x > 0.0 && y > 0.0) pts.emplace_back(std::log10(x), std::log10(y));

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    if (!pts.empty()) {
        xmin = xmax = pts[0].first;
        ymin = ymax = pts[0].second;
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const double padx = 0.06 * (xmax - xmin), pady = 0.06 * (ymax - ymin);
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;

    auto px = [&](double lx) { return M + (lx - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double ly) { return H - M - (ly - ymin) / (ymax - ymin) * (H - 2 * M); };

    char buf[256];
    std::string s;
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n", W, H, W, H);
    s += buf;
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">%s"
                  "</text>\n", M, title.c_str());
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                  "stroke=\"#444\"/>\n", M, M, W - 2 * M, H - 2 * M);
    s += buf;

    // decade grid lines
    for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"#ddd\"/>"
                      "<text x=\"%.1f\" y=\"%d\" font-family=\"sans-serif\" font-size=\"10\" "
                      "text-anchor=\"middle\">1e%d</text>\n",
                      px(d), M, px(d), H - M, px(d), H - M + 14, d);
        s += buf;
    }
    for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"#ddd\"/>"
                      "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
                      "text-anchor=\"end\">1e%d</text>\n",
                      M, py(d), W - M, py(d), M - 4, py(d) + 3, d);
        s += buf;
    }

    if (draw_fit && !pts.empty()) {
        // fitted line in natural log coordinates: ln y = slope ln x + intercept
        const double l10 = std::log(10.0);
        auto fit_ly = [&](double lx) { return (fit_slope * (lx * l10) + fit_intercept) / l10; };
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#c33\" "
                      "stroke-dasharray=\"5,3\"/>\n",
                      px(xmin), py(fit_ly(xmin)), px(xmax), py(fit_ly(xmax)));
        s += buf;
    }
    for (const auto& [lx, ly] : pts) {
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3.2\" fill=\"#2266aa\"/>\n",
                      px(lx), py(ly));
        s += buf;
    }
    s += "</svg>\n";
    return s;
}

} // namespace advstab
