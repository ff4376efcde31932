// Serial versus OpenMP kernels: the optimality-belief estimator and whole
// replication batches.

#include <benchmark/benchmark.h>

#include "wib/posterior.hpp"
#include "wib/runner.hpp"

using namespace wib;

namespace {

// K arms with overlapping (spread = 0.05) or well separated (spread = 1)
// posteriors after `t` observations each.
std::vector<PosteriorParams> make_params(std::size_t K, std::int64_t t, double spread) {
    std::vector<PosteriorParams> p;
    for (std::size_t k = 0; k < K; ++k) {
        const double z = static_cast<double>(t - 1) / static_cast<double>(K);
        p.push_back({z, {3.0 - spread * static_cast<double>(k), 0.1 * static_cast<double>(k)}, static_cast<double>(t), t});
    }
    return p;
}

void args(benchmark::internal::Benchmark* b) {
    for (int K : {5, 16, 200}) {
        for (int spread_pct : {5, 100}) b->Args({K, spread_pct});
    }
}

void BM_RhoReference(benchmark::State& state) {
    const auto p = make_params(static_cast<std::size_t>(state.range(0)), 2000, state.range(1) / 100.0);
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(reference::estimate_rho(p, 1024, Stream(1).split(i++)));
    state.SetItemsProcessed(state.iterations() * 1024);
}

void BM_RhoSerial(benchmark::State& state) {
    const auto p = make_params(static_cast<std::size_t>(state.range(0)), 2000, state.range(1) / 100.0);
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_rho(p, 1024, Stream(1).split(i++)));
    state.SetItemsProcessed(state.iterations() * 1024);
}

void BM_RhoParallel(benchmark::State& state) {
    const auto p = make_params(static_cast<std::size_t>(state.range(0)), 2000, state.range(1) / 100.0);
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(parallel::estimate_rho(p, 1024, Stream(1).split(i++)));
    state.SetItemsProcessed(state.iterations() * 1024);
}

BENCHMARK(BM_RhoReference)->Apply(args);
BENCHMARK(BM_RhoSerial)->Apply(args);
BENCHMARK(BM_RhoParallel)->Apply(args);

Experiment small_experiment() {
    RunConfig cfg;
    cfg.mode = Mode::Simulate;
    cfg.instance = InstanceSpec{{{1.8, 2.4}, {2.0, 0.0}, {0.0, -1.625}, {-1.26, 1.68}, {-0.63, -0.84}},
                                {1.0, 1.0, 1.5625, 0.5625, 2.25}};
    cfg.policies = {PolicyKind::Wts, PolicyKind::TsUnknown};
    cfg.horizon = 1000;
    cfg.replications = 8;
    cfg.thin = 1000;
    return Experiment::from_config(cfg);
}

void BM_Replications(benchmark::State& state) {
    const auto ex = small_experiment();
    const auto exec = state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
    for (auto _ : state) benchmark::DoNotOptimize(run_replications(ex, exec));
    state.SetLabel(exec == Execution::Serial ? "serial" : "parallel");
}

BENCHMARK(BM_Replications)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
