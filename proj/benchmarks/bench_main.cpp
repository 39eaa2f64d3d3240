#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "decentral/config.hpp"
#include "decentral/econometrics.hpp"
#include "decentral/index.hpp"
#include "decentral/lqre.hpp"

namespace {

std::vector<double> values(std::size_t n) {
    std::mt19937_64 rng(42);
    std::lognormal_distribution<double> d(40.0, 3.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

void BM_DecentralizationIndex(benchmark::State& state) {
    const auto v = values(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decentral::decentralization_index(v));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DecentralizationIndex)->RangeMultiplier(10)->Range(10, 1000000);

void BM_Gini(benchmark::State& state) {
    const auto w = decentral::weights(values(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(decentral::gini(w));
}
BENCHMARK(BM_Gini)->Range(1000, 1000000);

void BM_LqreIndex(benchmark::State& state) {
    const decentral::LqreConfig cfg{static_cast<std::size_t>(state.range(0)), 0.001};
    for (auto _ : state) benchmark::DoNotOptimize(decentral::lqre_index(cfg));
}
BENCHMARK(BM_LqreIndex)->Range(100, 100000);

void BM_DefaultSweep(benchmark::State& state) {
    const decentral::SimulateConfig sim;
    const decentral::SweepGrid by_n{decentral::linspace_counts(1, sim.n_max, sim.points), sim.fixed_lambdas};
    const decentral::SweepGrid by_lambda{sim.fixed_ns, decentral::linspace(0.0, sim.lambda_max, sim.points)};
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decentral::sweep(by_n, threads));
        benchmark::DoNotOptimize(decentral::sweep(by_lambda, threads));
    }
}
BENCHMARK(BM_DefaultSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OlsNeweyWest(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> z;
    std::vector<decentral::NamedColumn> cols;
    for (int j = 0; j < 5; ++j) {
        decentral::Column c(n);
        for (auto& x : c) x = z(rng);
        cols.push_back({"x" + std::to_string(j), c});
    }
    decentral::Column y(n);
    for (auto& x : y) x = z(rng);
    const auto design = decentral::assemble_design({}, "y", y, cols);
    for (auto _ : state) benchmark::DoNotOptimize(decentral::ols_newey_west(design, 1));
}
BENCHMARK(BM_OlsNeweyWest)->Range(100, 100000);

void BM_Adf(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z;
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    double level = 0.0;
    for (auto& v : x) v = level += z(rng);
    for (auto _ : state) benchmark::DoNotOptimize(decentral::adf_test(x));
}
BENCHMARK(BM_Adf)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
