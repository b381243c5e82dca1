#include <benchmark/benchmark.h>

#include <cmath>

#include "advstab/solver.hpp"

using namespace advstab;

static void BM_ExplicitStep1D(benchmark::State& state) {
    Grid g(1, static_cast<int>(state.range(0)), 1.0);
    ScalarField theta0 = ScalarField::from_function(g, [](double x, double) {
        double d = x - 0.5;
        return std::exp(-200.0 * d * d);
    });
    VectorField u(g, 0.0);
    for (int i = 0; i < g.n(); ++i) u.face(0, i) = 0.3;
    SolverConfig cfg;
    cfg.kappa = 1e-3;
    cfg.t_final = 64.0 * g.spacing() / 0.3; // a fixed number of steps
    for (auto _ : state) benchmark::DoNotOptimize(solve(theta0, u, cfg));
}
BENCHMARK(BM_ExplicitStep1D)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SpectralDiffusion2D(benchmark::State& state) {
    Grid g(2, static_cast<int>(state.range(0)), 1.0);
    ScalarField rhs = ScalarField::from_function(g, [](double x, double y) {
        return std::sin(6.28 * x) * std::cos(12.56 * y);
    });
    for (auto _ : state) benchmark::DoNotOptimize(diffuse_spectral(rhs, 0.1, 0.01));
}
BENCHMARK(BM_SpectralDiffusion2D)->Arg(64)->Arg(128)->Arg(256);
