#include "advstab/solver.hpp"

#include <cmath>
#include <optional>
#include <complex>
#include <cstdio>
#include <numbers>

#include "advstab/fft.hpp"

namespace advstab {

namespace {

double auto_rate(const Grid& g, const VelocitySequence& u, double kappa, bool explicit_diffusion) {
    const double h = g.spacing();
    double adv = 0.0;
    for (const VectorField& frame : u.frames) {
        double r = 0.0;
        for (int a = 0; a < g.dim(); ++a) r += frame.max_abs_comp(a) / h;
        adv = std::max(adv, r);
    }
    double diff = explicit_diffusion ? 2.0 * g.dim() * kappa / (h * h) : 0.0;
    return adv + diff;
}

} // namespace

ScalarField diffuse_spectral(const ScalarField& rhs, double kappa, double dt) {
    const Grid& g = rhs.grid();
    const int n = g.n();
    const double h = g.spacing();
    const double pref = 4.0 * kappa * dt / (h * h);

    auto symbol1 = [&](int k) {
        double s = std::sin(std::numbers::pi * k / n);
        return s * s;
    };

    if (g.dim() == 1) {
        std::vector<std::complex<double>> a(rhs.values().begin(), rhs.values().end());
        fft(a, false);
        for (int k = 0; k < n; ++k)
            a[static_cast<std::size_t>(k)] /= 1.0 + pref * symbol1(k);
        fft(a, true);
        ScalarField out(g);
        for (int i = 0; i < n; ++i) out[i] = a[static_cast<std::size_t>(i)].real();
        return out;
    }
    std::vector<std::complex<double>> a(rhs.values().begin(), rhs.values().end());
    fft2(a, n, false);
    for (int kj = 0; kj < n; ++kj)
        for (int ki = 0; ki < n; ++ki)
            a[static_cast<std::size_t>(kj) * n + ki] /= 1.0 + pref * (symbol1(ki) + symbol1(kj));
    fft2(a, n, true);
    ScalarField out(g);
    for (std::int64_t i = 0; i < out.size(); ++i) out[i] = a[static_cast<std::size_t>(i)].real();
    return out;
}

SolveResult solve(const ScalarField& theta0, const VelocitySequence& u,
                  const SolverConfig& config) {
    const Grid& g = theta0.grid();
    if (!theta0.all_finite()) throw InvalidParameter("solve: theta0 has non-finite values");
    if (!(config.t_final > 0.0)) throw InvalidParameter("solve: t_final must be > 0");
    if (!(config.cfl_target > 0.0 && config.cfl_target <= 1.0))
        throw InvalidParameter("solve: cfl_target must be in (0,1]");
    if (config.kappa < 0.0) throw InvalidParameter("solve: kappa must be >= 0");
    for (const VectorField& frame : u.frames)
        if (!g.same_as(frame.grid())) throw DimensionMismatch("solve: velocity grid mismatch");

    const bool explicit_diff = config.scheme == SolverConfig::Scheme::explicit_euler;
    const double rate = auto_rate(g, u, config.kappa, explicit_diff);

    double dt = config.dt;
    long steps = 0;
    if (dt <= 0.0) {
        double dt_raw = rate > 0.0 ? config.cfl_target / rate : config.t_final;
        steps = static_cast<long>(std::ceil(config.t_final / dt_raw - 1e-12));
        steps = std::max<long>(steps, 1);
        dt = config.t_final / static_cast<double>(steps);
    } else {
        if (rate > 0.0 && dt > config.cfl_target / rate * (1.0 + 1e-12)) {
            char msg[160];
            std::snprintf(msg, sizeof(msg),
                          "solve: dt=%.3e violates the stability bound %.3e", dt,
                          config.cfl_target / rate);
            throw CflViolation(msg);
        }
        steps = static_cast<long>(std::ceil(config.t_final / dt - 1e-12));
        dt = config.t_final / static_cast<double>(steps);
    }

    int stride = config.sample_every;
    if (stride <= 0) stride = static_cast<int>(std::max<long>(1, steps / 512));

    SolveResult res{theta0, {}, dt, steps};
    res.diagnostics.lq_exponent = config.lq_exponent;
    res.diagnostics.rows.push_back(diagnostics_of(res.theta, config.lq_exponent, 0.0));

    ScalarField theta = theta0;
    for (long s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        const VectorField& vel = u.at_time(t);

        ScalarField adv = upwind_divergence(vel, theta);
        if (explicit_diff) {
            ScalarField lap = laplacian(theta);
            for (std::int64_t i = 0; i < theta.size(); ++i)
                theta[i] += dt * (config.kappa * lap[i] - adv[i]);
        } else {
            for (std::int64_t i = 0; i < theta.size(); ++i) theta[i] -= dt * adv[i];
            if (config.kappa > 0.0) theta = diffuse_spectral(theta, config.kappa, dt);
        }

        if ((s + 1) % 256 == 0 && !theta.all_finite())
            throw SolverDivergence("solve: non-finite values at t=" + std::to_string(t + dt));

        if ((s + 1) % stride == 0 || s + 1 == steps)
            res.diagnostics.rows.push_back(
                diagnostics_of(theta, config.lq_exponent, (s + 1) * dt));
    }
    if (!theta.all_finite()) throw SolverDivergence("solve: non-finite values at t_final");
    res.theta = std::move(theta);
    return res;
}

SolveResult solve(const ScalarField& theta0, const VectorField& u, const SolverConfig& config) {
    return solve(theta0, VelocitySequence::steady(u, config.t_final), config);
}

DiagnosticsRow diagnostics_of(const ScalarField& theta, double lq_exponent, double t) {
    const Grid& g = theta.grid();
    DiagnosticsRow row;
    row.t = t;
    row.mass = theta.mass();
    row.l1 = lq_norm(theta, 1.0);
    row.lq = lq_norm(theta, lq_exponent);
    row.linf = theta.max_abs();

    const double floor = 1e-14 * theta.max_abs();
    const double mu = g.cell_measure();
    const double cx = 0.5 * g.length();
    const double cy = 0.5 * g.length();

    ScalarField gx = centered_derivative(theta, 0);
    std::optional<ScalarField> gy;
    if (g.dim() == 2) gy = centered_derivative(theta, 1);

    double entropy = 0.0, fisher = 0.0, moment = 0.0, gradl1 = 0.0;
    const int n = g.n();
    if (floor > 0.0) {
        for (int j = 0; j < (g.dim() == 2 ? n : 1); ++j)
            for (int i = 0; i < n; ++i) {
                const std::int64_t idx = g.dim() == 2 ? g.index(i, j) : i;
                const double v = theta[idx];
                const double vf = std::max(v, floor);
                entropy += vf * std::log(vf);
                double g2 = gx[idx] * gx[idx];
                if (gy) g2 += (*gy)[idx] * (*gy)[idx];
                fisher += g2 / vf;
                gradl1 += std::sqrt(g2);
                double dx = g.wrap_delta(g.center(i) - cx);
                double dy = g.dim() == 2 ? g.wrap_delta(g.center(j) - cy) : 0.0;
                moment += std::sqrt(dx * dx + dy * dy) * v;
            }
    }
    row.entropy = entropy * mu;
    row.fisher = fisher * mu;
    row.moment1 = moment * mu;
    row.gradl1 = gradl1 * mu;
    return row;
}

std::string Diagnostics::to_csv() const {
    std::string out = "t,mass,l1,lq,linf,entropy,fisher,moment1,gradl1\n";
    char line[320];
    for (const DiagnosticsRow& r : rows) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.t, r.mass, r.l1, r.lq, r.linf, r.entropy, r.fisher, r.moment1,
                      r.gradl1);
        out += line;
    }
    return out;
}

} // namespace advstab
