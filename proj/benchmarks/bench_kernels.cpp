#include <benchmark/benchmark.h>

#include <cmath>

#include "hypstab/conformal2d.hpp"
#include "hypstab/radial_flow.hpp"
#include "hypstab/spectral.hpp"

using namespace hypstab;

namespace {

FlowParams hyperbolic_params() {
    FlowParams p;
    p.geom = BackgroundGeometry(Background::Hyperbolic, 4);
    return p;
}

void BM_RadialRhs(benchmark::State& state) {
    const auto s = damped_bump(RadialGrid(6.0, static_cast<int>(state.range(0))), 0.01);
    const auto params = hyperbolic_params();
    for (auto _ : state) benchmark::DoNotOptimize(rhs(s, params));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadialRhs)->RangeMultiplier(4)->Range(150, 9600)->Complexity();

void BM_RadialStep(benchmark::State& state) {
    const RadialGrid grid(6.0, static_cast<int>(state.range(0)));
    RadialFlowSolver solver(grid, hyperbolic_params());
    auto s = damped_bump(grid, 0.01);
    const double dt = 0.2 * grid.spacing() * grid.spacing();
    for (auto _ : state) {
        solver.advance(s, dt);
        benchmark::ClobberMemory();
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadialStep)->RangeMultiplier(4)->Range(150, 9600)->Complexity();

void BM_ConformalStep(benchmark::State& state) {
    const RadialGrid grid(6.0, static_cast<int>(state.range(0)));
    std::vector<double> u(grid.size(), 0.0);
    for (int j = 0; j < grid.intervals(); ++j) u[j] = 0.1 * std::exp(-grid.node(j) * grid.node(j));
    ConformalState s(grid, u);
    ConformalSolver solver(grid, ConformalParams{});
    const double dt = 0.2 * grid.spacing() * grid.spacing();
    for (auto _ : state) {
        solver.advance(s, dt);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_ConformalStep)->Arg(600)->Arg(2400);

void BM_FirstEigenvalue(benchmark::State& state) {
    const RadialEigenProblem problem{BackgroundGeometry(Background::Hyperbolic, 2), 10.0,
                                     static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(first_dirichlet_eigenvalue(problem));
}
BENCHMARK(BM_FirstEigenvalue)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
