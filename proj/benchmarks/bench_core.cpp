#include <benchmark/benchmark.h>

#include "qtime/dwell_time.hpp"
#include "qtime/sampling.hpp"
#include "qtime/time_moments.hpp"
#include "qtime/wavepacket.hpp"

using namespace qtime;

namespace {

const PhysicalConstants kUnits{};

SpectralAmplitude packet(double steps_per_sigma) {
  return gaussian_spectrum(5.0, 0.5, Representation::energy, default_energy_grid(5.0, 0.5, steps_per_sigma), kUnits);
}

void BM_SynthesizeSlice(benchmark::State& state) {
  const auto sp = packet(static_cast<double>(state.range(0)));
  const Grid1D tg = suggest_time_grid(sp, 10.0, kUnits);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_slice(sp, 10.0, tg, kUnits));
  state.SetItemsProcessed(static_cast<long long>(state.iterations() * sp.grid().count() * tg.count()));
}
BENCHMARK(BM_SynthesizeSlice)->Arg(50)->Arg(200);

void BM_MomentTimeRep(benchmark::State& state) {
  const auto sp = packet(200.0);
  const Grid1D tg = suggest_time_grid(sp, 10.0, kUnits);
  for (auto _ : state) {
    const auto df = density_flux(synthesize_slice(sp, 10.0, tg, kUnits), kUnits);
    benchmark::DoNotOptimize(moment_time_rep(flux_measure(tg, df.j, FluxSign::both), 2));
  }
}
BENCHMARK(BM_MomentTimeRep);

void BM_MomentEnergyRep(benchmark::State& state) {
  const auto sp = packet(200.0);
  for (auto _ : state) benchmark::DoNotOptimize(moment_energy_rep(sp, 10.0, 2, kUnits));
}
BENCHMARK(BM_MomentEnergyRep);

void BM_TransferMatrix(benchmark::State& state) {
  const auto setup = ScatteringSetup::rectangular_barrier(6.0, 1.0);
  // Offset sweep: E = V is a band edge and throws.
  long long i = 0;
  for (auto _ : state) {
    const double e = 1.005 + 0.01 * static_cast<double>(i++ % 900);
    benchmark::DoNotOptimize(solve_stationary(setup, e, kUnits).transmission());
  }
}
BENCHMARK(BM_TransferMatrix);

void BM_MeanDwell(benchmark::State& state) {
  const auto sp = with_time_shift(packet(50.0), -4.0, kUnits);
  const auto setup = ScatteringSetup::rectangular_barrier(6.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mean_dwell_density(sp, setup, 0.0, 1.0, kUnits));
}
BENCHMARK(BM_MeanDwell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
