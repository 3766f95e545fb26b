#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "flowlab/elliptic.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/linalg.hpp"
#include "flowlab/scenarios.hpp"

using namespace flowlab;

static void BM_Tridiagonal(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> a(n, -1.0), b(n, 2.5), c(n, -1.0), rhs(n);
    for (auto _ : state) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] = std::sin(0.01 * i);
        solve_tridiagonal(a, b, c, rhs);
        benchmark::DoNotOptimize(rhs.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Tridiagonal)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

static void BM_BandFactorSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int kw = 8;
    for (auto _ : state) {
        BandMatrix A(n, kw, kw);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i >= kw ? i - kw : 0; j <= std::min(n - 1, i + kw); ++j)
                A.at(i, j) = i == j ? 4.0 * kw : -1.0;
        std::vector<double> rhs(n, 1.0);
        A.factor();
        A.solve(rhs);
        benchmark::DoNotOptimize(rhs.data());
    }
}
BENCHMARK(BM_BandFactorSolve)->Arg(1 << 12)->Arg(1 << 14);

static void BM_NewtonDisk(benchmark::State& state) {
    auto bg = make_disk(static_cast<int>(state.range(0)), 1);
    const Field guess(bg, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_liouville_dirichlet(bg, 2.0, guess));
}
BENCHMARK(BM_NewtonDisk)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

static void BM_NewtonPolar(benchmark::State& state) {
    auto bg = make_disk(128, static_cast<int>(state.range(0)));
    const Field guess(bg, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_liouville_dirichlet(bg, 2.0, guess));
}
BENCHMARK(BM_NewtonPolar)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_FlowStep(benchmark::State& state) {
    auto bg = make_disk(static_cast<int>(state.range(0)), 1);
    FlowConfig cfg{bg, solve_liouville_dirichlet(bg, 0.0, Field(bg, 0.0)), low_speed_phi(LowSpeedKind::LogShift)};
    const FlowState s{0.0, cfg.u0};
    for (auto _ : state) benchmark::DoNotOptimize(attempt_step(s, cfg, 1e-3));
}
BENCHMARK(BM_FlowStep)->Arg(1024)->Arg(4096);

static void BM_FlowStepRobin(benchmark::State& state) {
    auto bg = make_disk(static_cast<int>(state.range(0)), 1);
    const ScenarioData d = steady_radial_example(bg, 0.5);
    FlowConfig cfg{bg, d.u0, d.bc};
    const FlowState s{0.0, cfg.u0};
    for (auto _ : state) benchmark::DoNotOptimize(attempt_step(s, cfg, 1e-2));
}
BENCHMARK(BM_FlowStepRobin)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
