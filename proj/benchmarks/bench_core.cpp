#include <benchmark/benchmark.h>

#include <cmath>

#include "optomech/config.hpp"
#include "optomech/linear_response.hpp"
#include "optomech/steady_state.hpp"
#include "optomech/sweep.hpp"
#include "optomech/timedomain.hpp"

namespace {

using namespace optomech;

void BM_PhotonNumberRoots(benchmark::State& state) {
    const SystemParams sys = SystemParams::from_angular(100.0, 1.0, 1.0, std::sqrt(0.5), 1e-3);
    const DriveAmplitudes drive{std::sqrt(10.0), 0.0, 4.0, 4.0};
    for (auto _ : state) benchmark::DoNotOptimize(photon_number_roots(sys, drive));
}
BENCHMARK(BM_PhotonNumberRoots);

void BM_EvaluateProbe(benchmark::State& state) {
    const SystemParams sys = reference_device();
    const DriveAmplitudes drive = resolve_drive(sys, {8e-9, 1e-12, sys.omega_n(), sys.omega_n()});
    const SteadyState s = steady_state(sys, drive);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_probe(sys, drive, s));
}
BENCHMARK(BM_EvaluateProbe);

void BM_GroupDelay(benchmark::State& state) {
    const SystemParams sys = reference_device();
    const DriveParams red{0.0, 1e-15, sys.omega_n(), 0.0};
    const double power = static_cast<double>(state.range(0)) * 1e-10;
    for (auto _ : state) benchmark::DoNotOptimize(group_delay(sys, red, power));
}
BENCHMARK(BM_GroupDelay)->Arg(2)->Arg(10)->Arg(80);

void BM_DetuningSweep(benchmark::State& state) {
    Config config;
    config.count = state.range(0);
    const RunConfig run = resolve_config(config);
    for (auto _ : state) benchmark::DoNotOptimize(run_detuning_sweep(run));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetuningSweep)->Arg(301)->Arg(3601);

void BM_Rk4Trajectory(benchmark::State& state) {
    const SystemParams sys = SystemParams::from_angular(100.0, 1.0, 0.1, 1e-3, 0.02);
    const DriveAmplitudes drive{1.0, 1e-3, 1.0, 1.0};
    const double dt = kTwoPi / 128;
    const double t_end = dt * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate_final(sys, drive, {}, t_end, dt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4Trajectory)->Arg(1 << 12)->Arg(1 << 16);

void BM_Crosscheck(benchmark::State& state) {
    const SystemParams sys = SystemParams::from_angular(100.0, 1.0, 0.1, 1e-3, 0.02);
    const double pump = std::sqrt(100.0 * (0.01 + std::pow(1.0 - 2e-6 * 100.0, 2)));
    for (auto _ : state) benchmark::DoNotOptimize(crosscheck(sys, {pump, 1e-3 * pump, 1.0, 1.0}));
}
BENCHMARK(BM_Crosscheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
