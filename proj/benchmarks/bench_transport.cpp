#include <benchmark/benchmark.h>

#include <random>

#include "advstab/sinkhorn.hpp"
#include "advstab/transport.hpp"

using namespace advstab;

namespace {

OtInstance random_instance(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    OtInstance inst;
    inst.dim = 2;
    inst.length = 1.0;
    double ma = 0.0, mb = 0.0;
    for (int i = 0; i < side; ++i) {
        inst.src.push_back({unif(rng), unif(rng)});
        inst.a.push_back(0.05 + unif(rng));
        ma += inst.a.back();
        inst.tgt.push_back({unif(rng), unif(rng)});
        inst.b.push_back(0.05 + unif(rng));
        mb += inst.b.back();
    }
    for (double& v : inst.b) v *= ma / mb;
    return inst;
}

} // namespace

static void BM_ExactOt(benchmark::State& state) {
    OtInstance inst = random_instance(static_cast<int>(state.range(0)), 7);
    const CostFunction cost = CostFunction::log_delta(1e-2);
    for (auto _ : state) benchmark::DoNotOptimize(exact_ot(inst, cost, 1 << 14));
}
BENCHMARK(BM_ExactOt)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_Sinkhorn(benchmark::State& state) {
    OtInstance inst = random_instance(static_cast<int>(state.range(0)), 8);
    const CostFunction cost = CostFunction::log_delta(1e-2);
    for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_ot(inst, cost, 1e-2));
}
BENCHMARK(BM_Sinkhorn)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_W1Oracle1D(benchmark::State& state) {
    Grid g(1, static_cast<int>(state.range(0)), 1.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    ScalarField mu(g), nu(g);
    for (std::int64_t i = 0; i < mu.size(); ++i) {
        mu[i] = unif(rng);
        nu[i] = unif(rng);
    }
    nu *= mu.mass() / nu.mass();
    for (auto _ : state) benchmark::DoNotOptimize(w1_1d_oracle(mu, nu));
}
BENCHMARK(BM_W1Oracle1D)->Arg(1024)->Arg(4096);
