#include <benchmark/benchmark.h>

#include <numbers>

#include "idd/family.hpp"
#include "idd/fdsoliton.hpp"
#include "idd/observables.hpp"
#include "idd/period.hpp"

namespace {

using namespace idd;

Exec mode(const benchmark::State& s) { return s.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_PeriodScan(benchmark::State& state) {
    const std::vector<double> grid = default_energy_grid(Branch::EvenInterior, 0.5, 100, 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(period_scan(Branch::EvenInterior, 0.5, grid, {}, true, mode(state)));
    }
    state.SetLabel(mode(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_MassValues(benchmark::State& state) {
    const double L = 2 * std::numbers::pi;
    const FamilyCurve curve = continue_family(Branch::OddExterior, L, uniform_omega_grid(Branch::OddExterior, L, 64));
    for (auto _ : state) benchmark::DoNotOptimize(mass_values(curve, {}, mode(state)));
    state.SetLabel(mode(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_ArtefactScan(benchmark::State& state) {
    const std::vector<double> grid = artefact_omega_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(artefact_scan({0.05}, grid, StartPolicy::Cold, mode(state)));
    }
    state.SetLabel(mode(state) == Exec::Serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_PeriodScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MassValues)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ArtefactScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
