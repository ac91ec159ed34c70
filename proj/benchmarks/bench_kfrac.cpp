#include <kfrac/constants.hpp>
#include <kfrac/energy.hpp>
#include <kfrac/frac_ops.hpp>
#include <kfrac/selftest.hpp>
#include <kfrac/solver.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace kfrac;

namespace {

void BM_DerivativeAssembly(benchmark::State& state) {
    const Grid grid(1.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(frac_derivative_op(grid, 0.5, Side::left));
}
BENCHMARK(BM_DerivativeAssembly)->RangeMultiplier(2)->Range(128, 1024);

void BM_IntegralApply(benchmark::State& state) {
    const Grid grid(1.0, static_cast<std::size_t>(state.range(0)));
    const auto op = frac_integral_op(grid, 0.5, Side::left);
    const auto f = GridFunction::sample_scalar(grid, [](double t) { return t * t; });
    for (auto _ : state) benchmark::DoNotOptimize(apply(op, f));
}
BENCHMARK(BM_IntegralApply)->RangeMultiplier(2)->Range(128, 1024);

void BM_EnergyAndGradient(benchmark::State& state) {
    const Problem problem(reference_spec(), static_cast<std::size_t>(state.range(0)));
    const Lambda lam = Lambda::from_log10(55.0);
    const GridFunction u = 1e-8 * sine_test_element(problem);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy(u, problem, lam));
        benchmark::DoNotOptimize(energy_gradient(u, problem, lam));
    }
}
BENCHMARK(BM_EnergyAndGradient)->RangeMultiplier(2)->Range(128, 1024);

void BM_Constants(benchmark::State& state) {
    const Problem problem(reference_spec(), 512);
    for (auto _ : state) benchmark::DoNotOptimize(compute_constants(problem));
}
BENCHMARK(BM_Constants);

void BM_SolveCoarse(benchmark::State& state) {
    const Problem problem(reference_spec(), 128);
    const ConstantsReport c = compute_constants(problem);
    MountainPassConfig cfg;
    cfg.grid_m = 128;
    for (auto _ : state) benchmark::DoNotOptimize(solve(problem, c, Lambda::from_log10(55.0), cfg));
}
BENCHMARK(BM_SolveCoarse)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();
