#include <benchmark/benchmark.h>

#include "ptwell/shooting.hpp"
#include "ptwell/spectral.hpp"

namespace {

void BM_RealSpectrum(benchmark::State& state) {
  const ptwell::Coupling z(2.0);
  const int count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ptwell::solve_real_spectrum(z, count));
}
BENCHMARK(BM_RealSpectrum)->Arg(10)->Arg(100);

void BM_CriticalCoupling(benchmark::State& state) {
  const int nu = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ptwell::find_critical_coupling(nu));
}
BENCHMARK(BM_CriticalCoupling)->Arg(0)->Arg(1);

void BM_ComplexPair(benchmark::State& state) {
  const ptwell::Coupling z(8.0);
  for (auto _ : state) benchmark::DoNotOptimize(ptwell::solve_complex_pair(z, 0));
}
BENCHMARK(BM_ComplexPair);

void BM_Mismatch(benchmark::State& state) {
  const ptwell::ShootingSolver solver(ptwell::square_well_potential(ptwell::Coupling(2.0)));
  const bool coarse = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(solver.mismatch({10.0, 0.5}, coarse));
}
BENCHMARK(BM_Mismatch)->Arg(0)->Arg(1);

void BM_OracleSpectrum(benchmark::State& state) {
  const auto v = ptwell::square_well_potential(ptwell::Coupling(2.0));
  ptwell::SearchBox box;
  box.re_max = 200.0;
  for (auto _ : state) benchmark::DoNotOptimize(ptwell::find_spectrum_numeric(v, 8, box));
}
BENCHMARK(BM_OracleSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace
