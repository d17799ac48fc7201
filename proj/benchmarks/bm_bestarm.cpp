#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "bestarm/baseline.hpp"
#include "bestarm/melim.hpp"
#include "bestarm/metrics.hpp"
#include "bestarm/prism.hpp"

using namespace bestarm;

static void bm_pull_bernoulli(benchmark::State& state) {
    const auto inst = make_alpha_instance(7, 0.5, 0.9, 0.5, RewardFamily::bernoulli);
    EnvironmentHandle env(inst, 1, 0);
    const std::int64_t batch = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(env.pull_mean(0, batch));
    }
    state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(bm_pull_bernoulli)->Arg(1 << 10)->Arg(1 << 16);

static void bm_pull_gaussian(benchmark::State& state) {
    const auto inst = make_alpha_instance(7, 0.5, 0.9, 0.5, RewardFamily::gaussian, 0.25);
    EnvironmentHandle env(inst, 1, 0);
    const std::int64_t batch = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(env.pull_mean(0, batch));
    }
    state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(bm_pull_gaussian)->Arg(1 << 10)->Arg(1 << 16);

static void bm_median_eliminate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> means(n);
    for (int i = 0; i < n; ++i) means[i] = 0.9 - 0.5 * i / n;
    const BanditInstance inst(means, RewardFamily::bernoulli);
    std::vector<int> arms(n);
    std::iota(arms.begin(), arms.end(), 0);
    std::int64_t pulls = 0;
    for (auto _ : state) {
        EnvironmentHandle env(inst, 1, static_cast<std::uint64_t>(state.iterations()));
        const auto r = median_eliminate(env, arms, 0.3, 0.1);
        pulls += r.pulls_used;
        benchmark::DoNotOptimize(r.chosen);
    }
    state.SetItemsProcessed(pulls);
}
BENCHMARK(bm_median_eliminate)->Arg(8)->Arg(64);

static void bm_prism_trial(benchmark::State& state) {
    const auto inst = make_alpha_instance(static_cast<int>(state.range(0)), 0.3, 0.9, 0.5,
                                          RewardFamily::bernoulli);
    PrismOptions opt;
    opt.record_trace = false;
    std::int64_t pulls = 0;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        EnvironmentHandle env(inst, 2, trial++);
        const auto r = prism(env, 0.1, PrismVariant::standard, opt);
        pulls += r.total_pulls;
        benchmark::DoNotOptimize(r.chosen);
    }
    state.SetItemsProcessed(pulls);
}
BENCHMARK(bm_prism_trial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void bm_hardness(benchmark::State& state) {
    std::vector<double> g(100000);
    for (std::size_t i = 1; i <= g.size(); ++i)
        g[i - 1] = std::pow(static_cast<double>(i) / g.size(), 0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hardness_H(g));
        benchmark::DoNotOptimize(hardness_G(g));
    }
}
BENCHMARK(bm_hardness);

BENCHMARK_MAIN();
