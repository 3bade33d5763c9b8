// Serial reference kernels against the OpenMP kernels: one right-hand side
// evaluation and one RK4 step of a Burby m = 3 fluid on grids of growing size.

#include "hydroclose/closures.hpp"
#include "hydroclose/sim/fluid.hpp"
#include "hydroclose/sim/initial.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

using namespace hydroclose;
using namespace hydroclose::sim;

constexpr double kTwoPi = 6.283185307179586;

FieldState bench_state(const Grid& g) {
    FieldState s = homogeneous_state(g, 1.0, 0.2, std::vector<double>{0.4, 0.3, 1.0});
    perturb(s, g, {PerturbedField::rho, 0, 1e-3, 1, 0.0});
    perturb(s, g, {PerturbedField::nu, 2, 1e-3, 2, 0.5});
    return s;
}

template <KernelMode Mode>
void BM_rhs(benchmark::State& state) {
    const Grid g{kTwoPi, static_cast<std::size_t>(state.range(0))};
    FluidModel model(make_burby(3), g, Discretization::spectral, Mode);
    const FieldState s = bench_state(g);
    FieldState out = s;
    for (auto _ : state) {
        model.rhs(s, out);
        benchmark::DoNotOptimize(out.rho.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <KernelMode Mode>
void BM_rk4_step(benchmark::State& state) {
    const Grid g{kTwoPi, static_cast<std::size_t>(state.range(0))};
    FluidModel model(make_burby(3), g, Discretization::spectral, Mode);
    FieldState s = bench_state(g);
    for (auto _ : state) {
        model.step(s, 1e-4, Scheme::rk4);
        benchmark::DoNotOptimize(s.rho.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_rhs<KernelMode::serial>)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_rhs<KernelMode::openmp>)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_rk4_step<KernelMode::serial>)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_rk4_step<KernelMode::openmp>)->RangeMultiplier(4)->Range(256, 65536);

BENCHMARK_MAIN();
