#include <benchmark/benchmark.h>

#include <random>

#include "vw/cases.hpp"
#include "vw/fdsolver.hpp"
#include "vw/galerkin.hpp"
#include "vw/linalg.hpp"
#include "vw/norms.hpp"

namespace {

void BM_Thomas(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    vw::Tridiagonal T(n);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        T.lower[i] = u(rng);
        T.upper[i] = u(rng);
        T.diag[i] = 4.0 + u(rng);
        rhs[i] = u(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(vw::solve_tridiagonal(T, rhs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Thomas)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_BuildInstance(benchmark::State& state)
{
    const double eps = 1.0 / static_cast<double>(state.range(0));
    const auto net = vw::MollifierNet::standard({eps});
    const auto grid = vw::GridPolicy{}.for_epsilon(eps, 1.0);
    const auto spec = vw::builtin_case(2);
    for (auto _ : state) benchmark::DoNotOptimize(vw::build_instance(spec, net, eps, grid));
}
BENCHMARK(BM_BuildInstance)->Arg(10)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state)
{
    const double eps = 1.0 / static_cast<double>(state.range(0));
    const auto net = vw::MollifierNet::standard({eps});
    const auto grid = vw::GridPolicy{}.for_epsilon(eps, 1.0);
    const auto inst = vw::build_instance(vw::builtin_case(3), net, eps, grid);
    for (auto _ : state) benchmark::DoNotOptimize(vw::solve(inst, {}));
    state.counters["nodes"] = static_cast<double>((grid.nx + 1) * (grid.nt + 1));
}
BENCHMARK(BM_Solve)->Arg(10)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EnergyNorms(benchmark::State& state)
{
    const auto net = vw::MollifierNet::standard({0.05});
    const auto grid = vw::GridPolicy{}.for_epsilon(0.05, 1.0);
    const auto inst = vw::build_instance(vw::builtin_case(4), net, 0.05, grid);
    const auto traj = vw::solve(inst, {});
    for (auto _ : state) benchmark::DoNotOptimize(vw::energy_norms(traj, inst));
}
BENCHMARK(BM_EnergyNorms)->Unit(benchmark::kMillisecond);

void BM_GalerkinAssemble(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto inst =
        vw::build_instance(vw::builtin_case(1), vw::MollifierNet::standard({1.0}), 1.0, {256, 16});
    for (auto _ : state) benchmark::DoNotOptimize(vw::assemble(inst, m));
}
BENCHMARK(BM_GalerkinAssemble)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
