#include <benchmark/benchmark.h>

#include <random>

#include "advstab/field.hpp"
#include "advstab/kernel.hpp"

using namespace advstab;

namespace {

ScalarField random_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField f(g);
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] = gauss(rng);
    return f;
}

} // namespace

static void BM_Laplacian2D(benchmark::State& state) {
    Grid g(2, static_cast<int>(state.range(0)), 1.0);
    ScalarField f = random_field(g, 1);
    for (auto _ : state) benchmark::DoNotOptimize(laplacian(f));
    state.SetItemsProcessed(state.iterations() * g.cell_count());
}
BENCHMARK(BM_Laplacian2D)->Arg(64)->Arg(128)->Arg(256);

static void BM_MaximalFunction(benchmark::State& state) {
    Grid g(2, static_cast<int>(state.range(0)), 1.0);
    ScalarField f = random_field(g, 2);
    std::vector<double> radii = dyadic_radii(g);
    for (auto _ : state) benchmark::DoNotOptimize(maximal_function(f, radii));
}
BENCHMARK(BM_MaximalFunction)->Arg(64)->Arg(128);

static void BM_Mollify(benchmark::State& state) {
    Grid g(2, 128, 1.0);
    ScalarField f = random_field(g, 3);
    const double eps = static_cast<double>(state.range(0)) * g.spacing();
    for (auto _ : state) benchmark::DoNotOptimize(mollify(f, eps));
}
BENCHMARK(BM_Mollify)->Arg(4)->Arg(16);

static void BM_BiotSavartDirect(benchmark::State& state) {
    Grid g(2, static_cast<int>(state.range(0)), 1.0);
    ScalarField om = random_field(g, 4);
    KernelSpec bs;
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_convolve(bs, om, ConvolveMethod::direct));
}
BENCHMARK(BM_BiotSavartDirect)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BiotSavartFFT(benchmark::State& state) {
    Grid g(2, static_cast<int>(state.range(0)), 1.0);
    ScalarField om = random_field(g, 4);
    KernelSpec bs;
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_convolve(bs, om, ConvolveMethod::fft));
}
BENCHMARK(BM_BiotSavartFFT)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
