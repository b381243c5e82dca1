#include "advstab/flow.hpp"

#include <cmath>

namespace advstab {

namespace {

double wrap_pos(double x, double L) {
    x = std::fmod(x, L);
    return x < 0.0 ? x + L : x;
}

/// Bilinear interpolation of one component whose samples sit at
/// (i + offx) h, (j + offy) h on a periodic lattice.
double interp_component(const Grid& g, const std::vector<double>& data,
                        double offx, double offy, double x, double y) {
    const double h = g.spacing();
    const double fx = x / h - offx;
    const double fy = g.dim() == 2 ? y / h - offy : 0.0;
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const double ax = fx - ix;
    const double ay = fy - iy;

    auto v = [&](int i, int j) {
        return data[static_cast<std::size_t>(g.index(i, j))];
    };
    if (g.dim() == 1)
        return (1.0 - ax) * v(ix, 0) + ax * v(ix + 1, 0);
    return (1.0 - ax) * (1.0 - ay) * v(ix, iy) + ax * (1.0 - ay) * v(ix + 1, iy)
           + (1.0 - ax) * ay * v(ix, iy + 1) + ax * ay * v(ix + 1, iy + 1);
}

} // namespace

std::array<double, 2> interpolate_velocity(const VectorField& u, std::array<double, 2> x) {
    const Grid& g = u.grid();
    const double L = g.length();
    const double px = wrap_pos(x[0], L);
    const double py = g.dim() == 2 ? wrap_pos(x[1], L) : 0.0;
    std::array<double, 2> out = {0.0, 0.0};
    // component 0 sits at (i, j+1/2) h, component 1 at (i+1/2, j) h
    out[0] = interp_component(g, u.comp(0), 0.0, 0.5, px, py);
    if (g.dim() == 2) out[1] = interp_component(g, u.comp(1), 0.5, 0.0, px, py);
    return out;
}

std::array<double, 2> flow_map(const VelocitySequence& u, std::array<double, 2> x0,
                               double t_final, double dt) {
    const Grid& g = u.frames.front().grid();
    const double L = g.length();
    long steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));
    steps = std::max<long>(steps, 1);
    const double step = t_final / static_cast<double>(steps);

    std::array<double, 2> x = x0;
    for (long s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * step;
        const VectorField& v0 = u.at_time(t);
        const VectorField& vh = u.at_time(t + 0.5 * step);
        const VectorField& v1 = u.at_time(t + step >= t_final ? t_final * (1.0 - 1e-15) : t + step);

        auto eval = [&](const VectorField& f, std::array<double, 2> p) {
            return interpolate_velocity(f, p);
        };
        auto k1 = eval(v0, x);
        auto k2 = eval(vh, {x[0] + 0.5 * step * k1[0], x[1] + 0.5 * step * k1[1]});
        auto k3 = eval(vh, {x[0] + 0.5 * step * k2[0], x[1] + 0.5 * step * k2[1]});
        auto k4 = eval(v1, {x[0] + step * k3[0], x[1] + step * k3[1]});
        x[0] += step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        x[1] += step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        x[0] = wrap_pos(x[0], L);
        if (g.dim() == 2) x[1] = wrap_pos(x[1], L);
    }
    return x;
}

double l1_linf_distance(const VelocitySequence& u1, const VelocitySequence& u2) {
    const std::size_t m = std::max(u1.frames.size(), u2.frames.size());
    const double dt = u1.t_final / static_cast<double>(m);
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double t = static_cast<double>(k) * dt;
        VectorField diff = u1.at_time(t);
        diff -= u2.at_time(t);
        acc += diff.max_abs() * dt;
    }
    return acc;
}

FlowStabilityReport flow_log_stability(const VelocitySequence& u1, const VelocitySequence& u2,
                                       const std::vector<std::array<double, 2>>& samples,
                                       double t_final, double dt) {
    const Grid& g = u1.frames.front().grid();
    FlowStabilityReport rep;
    rep.delta = l1_linf_distance(u1, u2);
    rep.grad_budget = l1_linf_gradient(u1) + 1.0;

    if (rep.delta == 0.0) {
        rep.trivial = true;
        rep.lhs_per_sample.assign(samples.size(), 0.0);
        return rep;
    }

    for (const auto& x0 : samples) {
        auto a = flow_map(u1, x0, t_final, dt);
        auto b = flow_map(u2, x0, t_final, dt);
        double sep = g.distance(a, b);
        double lhs = std::log(sep / rep.delta + 1.0);
        rep.lhs_per_sample.push_back(lhs);
        rep.lhs_max = std::max(rep.lhs_max, lhs);
    }
    rep.fitted_c = rep.lhs_max / rep.grad_budget;
    return rep;
}

} // namespace advstab
