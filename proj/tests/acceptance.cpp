// Acceptance suite: each numbered criterion runs at its stated tolerance and
// prints one pass/fail line. The process exits with the number of failures.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "advstab/experiments.hpp"
#include "advstab/flow.hpp"
#include "advstab/oracles.hpp"
#include "advstab/solver.hpp"
#include "advstab/transport.hpp"

using namespace advstab;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int number, const char* name, bool pass, const std::string& detail, double secs) {
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", pass ? "PASS" : "FAIL", number, name,
                detail.c_str(), secs);
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

double heat_kernel_periodic(double x, double x0, double var, double L) {
    double s = 0.0;
    for (int k = -4; k <= 4; ++k) {
        double d = x - x0 + k * L;
        s += std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
    }
    return s;
}

ScalarField gaussian_1d(const Grid& g, double x0, double sigma, double mass) {
    ScalarField f = ScalarField::from_function(g, [&](double x, double) {
        return heat_kernel_periodic(x, x0, sigma * sigma, g.length());
    });
    f *= mass / f.mass();
    return f;
}

// 1. Heat-kernel fidelity: 1D, u = 0, kappa = 0.01, n = 1024, T = 1,
//    L2 relative error <= 1e-3, runtime < 10 s.
void criterion_1() {
    Timer t;
    Grid g(1, 1024, 2.0);
    const double sigma0 = 0.05, kappa = 0.01, T = 1.0, x0 = 1.0;
    ScalarField theta0 = ScalarField::from_function(g, [&](double x, double) {
        return heat_kernel_periodic(x, x0, sigma0 * sigma0, g.length());
    });
    SolverConfig cfg;
    cfg.kappa = kappa;
    cfg.t_final = T;
    cfg.cfl_target = 0.9;
    SolveResult res = solve(theta0, VectorField(g, 0.0), cfg);

    const double varT = sigma0 * sigma0 + 2.0 * kappa * T;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        double e = heat_kernel_periodic(g.center(i), x0, varT, g.length());
        num += (res.theta[i] - e) * (res.theta[i] - e);
        den += e * e;
    }
    const double err = std::sqrt(num / den);
    const double secs = t.seconds();
    report(1, "heat-kernel fidelity", err <= 1e-3 && secs < 10.0,
           fmt("L2 rel error %.3e <= 1e-3", err), secs);
}

// 2. Heat-kernel pair at t = 1 with kappa 1 vs 0.25: W1 = 1/sqrt(pi) within
//    2%, CDF oracle and exact LP within 1e-6 of each other, and the W1 rate
//    at fixed kappa1+kappa2 fitted to 1.0 +- 0.05. Runtime < 1 min.
void criterion_2() {
    Timer t;
    Grid g(1, 1024, 20.0);
    const double sigma0 = 0.06, T = 1.0;
    ScalarField theta0 = gaussian_1d(g, 10.0, sigma0, 1.0);
    auto run = [&](double kappa) {
        SolverConfig cfg;
        cfg.kappa = kappa;
        cfg.t_final = T;
        cfg.cfl_target = 0.9;
        return solve(theta0, VectorField(g, 0.0), cfg);
    };
    SolveResult r1 = run(1.0);
    SolveResult r2 = run(0.25);
    const double w1_oracle = w1_1d_oracle(r1.theta, r2.theta);
    const double w1_lp = distance(r1.theta, r2.theta, CostFunction::w1()).value;
    const double target = 1.0 / std::sqrt(std::numbers::pi);
    const double rel = std::abs(w1_oracle - target) / target;
    const double cross = std::abs(w1_oracle - w1_lp);

    SweepSpec spec;
    spec.channel = SweepSpec::Channel::diffusivity;
    spec.epsilons = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    spec.n = 1024;
    spec.length = 4.0;
    spec.t_final = 1.0;
    spec.scheme = SolverConfig::Scheme::imex;
    spec.kappa2 = 5e-4;
    spec.sigma0 = 0.02;
    spec.kappa_sum = 1.25;
    spec.jobs = 4;
    ExperimentReport rep = sweep_diffusivity(spec);
    double slope = 0.0;
    for (const NamedFit& f : rep.fits)
        if (f.name == "w1_rate_at_fixed_sum") slope = f.fit.slope;

    const double secs = t.seconds();
    const bool pass = rel <= 0.02 && cross <= 1e-6 && std::abs(slope - 1.0) <= 0.05 &&
                      secs < 60.0;
    report(2, "heat-kernel pair W1",
           pass,
           fmt("W1=%.5f vs 1/sqrt(pi)=%.5f (%.2f%%), |oracle-lp|=%.1e, slope=%.3f", w1_oracle,
               target, 100.0 * rel, cross, slope),
           secs);
}

// 3. Velocity channel: matched-delta distance varies by <= 10x over the
//    sweep while the fixed-delta distance responds logarithmically with
//    |slope| >= 0.5 against log(1/eps). Runtime < 5 min at n = 1024.
void criterion_3() {
    Timer t;
    SweepSpec spec;
    spec.channel = SweepSpec::Channel::velocity;
    spec.epsilons = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    spec.n = 1024;
    spec.length = 1.0;
    spec.kappa = 1e-6;
    spec.t_final = 1.0;
    spec.cfl = 0.95;
    spec.jobs = 5;
    ExperimentReport rep = sweep_velocity(spec);

    double lo = 1e300, hi = 0.0;
    for (const auto& row : rep.rows) {
        lo = std::min(lo, row.get("d_matched"));
        hi = std::max(hi, row.get("d_matched"));
    }
    double slope = 0.0;
    for (const NamedFit& f : rep.fits)
        if (f.name == "fixed_delta_vs_log_inv_eps") slope = f.fit.slope;

    const double secs = t.seconds();
    const bool pass = hi / lo <= 10.0 && std::abs(slope) >= 0.5 && secs < 300.0;
    report(3, "velocity channel", pass,
           fmt("matched ratio %.2f <= 10, fixed-delta |slope| %.2f >= 0.5", hi / lo,
               std::abs(slope)),
           secs);
}

// 4. Diffusivity channel: matched-delta distance bounded within 10x over
//    |k1-k2| in {1e-1..1e-3}; the gradient RHS term computed and reported.
//    Runtime < 5 min.
void criterion_4() {
    Timer t;
    SweepSpec spec;
    spec.channel = SweepSpec::Channel::diffusivity;
    spec.epsilons = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    spec.n = 1024;
    spec.length = 4.0;
    spec.t_final = 1.0;
    spec.scheme = SolverConfig::Scheme::imex;
    spec.kappa2 = 5e-4;
    spec.sigma0 = 0.02;
    spec.jobs = 5;
    ExperimentReport rep = sweep_diffusivity(spec);

    double lo = 1e300, hi = 0.0, rhs_term = 0.0;
    for (const auto& row : rep.rows) {
        lo = std::min(lo, row.get("d_matched"));
        hi = std::max(hi, row.get("d_matched"));
        rhs_term = row.get("rhs_grad_term");
    }
    const double secs = t.seconds();
    const bool pass = hi / lo <= 10.0 && rhs_term > 0.0 && secs < 300.0;
    report(4, "diffusivity channel", pass,
           fmt("matched ratio %.2f <= 10, grad term |grad theta2|_L1L1 = %.3g", hi / lo,
               rhs_term),
           secs);
}

// 5. Exact OT certificates on 200 random instances (<= 256 points, all
//    three costs) plus vertex-enumeration equality on 3x3 instances.
//    Runtime < 1 min.
void criterion_5() {
    Timer t;
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const CostFunction costs[3] = {CostFunction::w1(), CostFunction::log_delta(1e-2),
                                   CostFunction::tanh_bounded()};

    double worst_gap = 0.0, worst_feas = 0.0, worst_cs = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        OtInstance inst;
        inst.dim = 2;
        inst.length = 1.0;
        const int m = 4 + static_cast<int>(unif(rng) * 124); // m + n <= 256
        const int n = 4 + static_cast<int>(unif(rng) * 124);
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < m; ++i) {
            inst.src.push_back({unif(rng), unif(rng)});
            inst.a.push_back(0.05 + unif(rng));
            ma += inst.a.back();
        }
        for (int j = 0; j < n; ++j) {
            inst.tgt.push_back({unif(rng), unif(rng)});
            inst.b.push_back(0.05 + unif(rng));
            mb += inst.b.back();
        }
        for (double& v : inst.b) v *= ma / mb;
        ExactOtResult r = exact_ot(inst, costs[rep % 3]);
        worst_gap = std::max(worst_gap, r.duality_gap / (1.0 + r.value));
        worst_feas = std::max(worst_feas, r.feasibility_slack);
        worst_cs = std::max(worst_cs, r.complementary_slackness);
    }

    double worst33 = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
        OtInstance inst;
        inst.dim = 2;
        inst.length = 0.0;
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < 3; ++i) {
            inst.src.push_back({unif(rng), unif(rng)});
            inst.a.push_back(0.1 + unif(rng));
            ma += inst.a.back();
            inst.tgt.push_back({unif(rng), unif(rng)});
            inst.b.push_back(0.1 + unif(rng));
            mb += inst.b.back();
        }
        for (double& v : inst.b) v *= ma / mb;
        const CostFunction& cost = costs[rep % 3];
        worst33 = std::max(worst33, std::abs(ot_value_by_vertex_enumeration(inst, cost) -
                                             exact_ot(inst, cost).value));
    }

    const double secs = t.seconds();
    const bool pass = worst_gap <= 1e-8 && worst_feas <= 1e-9 && worst_cs <= 1e-7 &&
                      worst33 <= 1e-10 && secs < 60.0;
    report(5, "exact OT certificates", pass,
           fmt("gap %.1e<=1e-8, feas %.1e<=1e-9, cs %.1e<=1e-7, 3x3 %.1e<=1e-10", worst_gap,
               worst_feas, worst_cs, worst33),
           secs);
}

// 6. Bounded-cost reduction inequality on 50 random zero-mean fields times
//    9 (gamma, delta) combinations, nonnegative slack. Runtime < 2 min.
void criterion_6() {
    Timer t;
    Grid g(1, 64, 1.0);
    std::mt19937_64 rng(606);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_slack = 1e300;
    int checked = 0;
    for (int rep = 0; rep < 50; ++rep) {
        ScalarField f(g);
        for (std::int64_t i = 0; i < f.size(); ++i) f[i] = gauss(rng);
        double mean = f.mass() / (g.cell_measure() * g.cell_count());
        for (std::int64_t i = 0; i < f.size(); ++i) f[i] -= mean;
        for (double gamma : {0.5, 0.1, 0.01})
            for (double delta : {0.5, 0.1, 0.01}) {
                BoundOtdReport r = bound_otd_check(f, gamma, delta);
                worst_slack = std::min(worst_slack, r.slack);
                ++checked;
            }
    }
    const double secs = t.seconds();
    const bool pass = worst_slack >= 0.0 && checked == 450 && secs < 120.0;
    report(6, "bounded-cost reduction", pass,
           fmt("min slack %.3e >= 0 over %d checks", worst_slack, checked), secs);
}

// 7. Derivative identity: translating-bump rate c * mass within 5% and the
//    heat-kernel pair within 10% of the dual-potential formula. Runtime < 2 min.
void criterion_7() {
    Timer t;
    bool pass = true;
    std::string detail;
    {
        Grid g(1, 512, 2.0);
        const double c = 0.25, tt = 0.4, dt_fd = 0.02, mass = 0.7;
        ScalarField stat = gaussian_1d(g, 0.5, 0.04, mass);
        VectorField u1(g, 0.0), u2(g, 0.0);
        for (int i = 0; i < g.n(); ++i) u2.face(0, i) = c;
        auto moving = [&](double time) { return gaussian_1d(g, 1.1 + c * time, 0.04, mass); };
        TrajectoryWindow w1{stat, stat, stat};
        TrajectoryWindow w2{moving(tt - dt_fd), moving(tt), moving(tt + dt_fd)};
        DtdReport rep = dtD_check(w1, w2, u1, u2, 0.0, 0.0, dt_fd, CostFunction::w1());
        const double rate_err = std::abs(rep.fd_derivative - c * mass) / (c * mass);
        pass = pass && rate_err <= 0.05 && rep.relative_gap <= 0.10;
        detail += fmt("translation rate err %.2f%%, gap %.2f%%; ", 100 * rate_err,
                      100 * rep.relative_gap);
    }
    {
        Grid g(1, 1024, 8.0);
        const double k1 = 0.5, k2 = 0.1, tt = 0.5, dt_fd = 0.02;
        auto snap = [&](double kappa, double time) {
            return gaussian_1d(g, 4.0, std::sqrt(0.01 + 2.0 * kappa * time), 1.0);
        };
        VectorField u(g, 0.0);
        TrajectoryWindow w1{snap(k1, tt - dt_fd), snap(k1, tt), snap(k1, tt + dt_fd)};
        TrajectoryWindow w2{snap(k2, tt - dt_fd), snap(k2, tt), snap(k2, tt + dt_fd)};
        DtdReport rep = dtD_check(w1, w2, u, u, k1, k2, dt_fd, CostFunction::log_delta(0.05));
        pass = pass && rep.relative_gap <= 0.10;
        detail += fmt("heat pair gap %.2f%% <= 10%%", 100 * rep.relative_gap);
    }
    const double secs = t.seconds();
    report(7, "derivative identity", pass && secs < 120.0, detail, secs);
}

// 8. Convolution bound for rough vorticity: p in {1, 1.25, 1.5} at n = 128
//    with eps in {4h..32h}; fitted C stable within a factor of 3. Runtime < 10 min.
void criterion_8() {
    Timer t;
    SweepSpec spec;
    spec.channel = SweepSpec::Channel::rough_field;
    spec.n = 128;
    spec.length = 1.0;
    spec.dim = 2;
    const double h = spec.length / spec.n;
    spec.epsilons = {32 * h, 16 * h, 8 * h, 4 * h};
    spec.t_final = 0.5;
    spec.jobs = 4;
    ExperimentReport rep = rough_field_probe(spec);

    bool pass = true;
    std::string detail;
    for (double p : {1.0, 1.25, 1.5}) {
        char name[32];
        std::snprintf(name, sizeof(name), "c_p%.2f", p);
        double lo = 1e300, hi = 0.0;
        for (const auto& row : rep.rows) {
            lo = std::min(lo, row.get(name));
            hi = std::max(hi, row.get(name));
        }
        pass = pass && hi / lo <= 3.0 && hi > 0.0;
        detail += fmt("p=%.2f ratio %.2f; ", p, hi / lo);
    }
    const double secs = t.seconds();
    report(8, "rough-vorticity convolution bound", pass && secs < 600.0, detail + "<= 3",
           secs);
}

// 9. Solver a priori suite: mass conservation to 1e-12 relative, Lq
//    monotonicity for divergence-free advection (1e-10 slack), entropy
//    dissipation, and the Fisher-information budget within 5%. Runtime < 2 min.
void criterion_9() {
    Timer t;
    Grid g(2, 128, 1.0);
    FieldFamilySpec fam;
    fam.kind = FieldFamilySpec::Kind::shear;
    fam.amplitude = 0.5;
    VectorField u = generate_field(fam, g);
    ScalarField theta0 = ScalarField::from_function(g, [](double x, double y) {
        double dx = x - 0.5, dy = y - 0.5;
        return 0.05 + std::exp(-50.0 * (dx * dx + dy * dy));
    });
    const double kappa = 2e-3;
    SolverConfig cfg;
    cfg.kappa = kappa;
    cfg.t_final = 0.5;
    cfg.sample_every = 16;
    cfg.lq_exponent = 2.0;
    SolveResult res = solve(theta0, u, cfg);
    const auto& rows = res.diagnostics.rows;

    const double mass_drift = std::abs(res.theta.mass() - theta0.mass()) / theta0.mass();
    bool lq_monotone = true, entropy_monotone = true;
    double lq_prev = 1e300, ent_prev = 1e300;
    for (const auto& row : rows) {
        if (row.lq > lq_prev + 1e-10) lq_monotone = false;
        if (row.entropy > ent_prev + 1e-8) entropy_monotone = false;
        lq_prev = row.lq;
        ent_prev = row.entropy;
    }
    double fisher_int = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
        fisher_int += 0.5 * (rows[k].fisher + rows[k - 1].fisher) * (rows[k].t - rows[k - 1].t);
    const double neg_div = field_norms(u, 2.0).neg_div_sup * cfg.t_final;
    const double budget = rows.front().entropy - rows.back().entropy + neg_div * rows.front().l1;
    const bool fisher_ok = kappa * fisher_int <= budget * 1.05 + 1e-12;

    const double secs = t.seconds();
    const bool pass =
        mass_drift <= 1e-12 && lq_monotone && entropy_monotone && fisher_ok && secs < 120.0;
    report(9, "solver a priori estimates", pass,
           fmt("mass drift %.1e, Lq monotone %s, entropy monotone %s, Fisher budget %.3f <= %.3f",
               mass_drift, lq_monotone ? "yes" : "no", entropy_monotone ? "yes" : "no",
               kappa * fisher_int, budget * 1.05),
           secs);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
