#include <benchmark/benchmark.h>

#include "zebrasim/regression.hpp"
#include "zebrasim/rng.hpp"
#include "zebrasim/simulation.hpp"

namespace {

using namespace zebrasim;

ScenarioConfig reference_demand(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    return cfg;
}

void BM_FullReplication73Min(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Simulation sim(reference_demand(seed++));
        sim.run();
        benchmark::DoNotOptimize(sim.world().episode_log.size());
    }
}
BENCHMARK(BM_FullReplication73Min)->Unit(benchmark::kMillisecond);

void BM_StepSteadyState(benchmark::State& state) {
    Simulation sim(reference_demand(7));
    sim.run_ticks(2000);  // warm up to steady occupancy
    for (auto _ : state) {
        sim.step();
        benchmark::DoNotOptimize(sim.world().tick);
    }
}
BENCHMARK(BM_StepSteadyState);

void BM_FloorField(benchmark::State& state) {
    const Geometry geom{reference_demand(1)};
    GridMask mask(geom.rows_total, geom.cols);
    for (int r = 0; r < geom.rows_total; ++r)
        for (int c = 0; c < geom.cols; ++c) mask.set(r, c);
    std::vector<GridCell> goals;
    for (int c = 0; c < geom.cols; ++c) goals.push_back({geom.rows_total - 1, c});
    for (auto _ : state) {
        const FloorField field = compute_floor_field(mask, goals);
        benchmark::DoNotOptimize(field.value.data());
    }
}
BENCHMARK(BM_FloorField);

void BM_OlsFit(benchmark::State& state) {
    RngStream rng(5);
    const int n = static_cast<int>(state.range(0));
    std::vector<std::vector<double>> x(n, std::vector<double>(2));
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        x[i][0] = rng.uniform(5.0, 30.0);
        x[i][1] = rng.uniform(0.0, 15.0);
        y[i] = 50.0 - x[i][0] + 2.0 * x[i][1] + rng.normal(0.0, 5.0);
    }
    for (auto _ : state) {
        const RegressionResult res = ols_fit(x, y);
        benchmark::DoNotOptimize(res.beta.data());
    }
}
BENCHMARK(BM_OlsFit)->Arg(73)->Arg(3285);

}  // namespace

BENCHMARK_MAIN();
