#include <benchmark/benchmark.h>

#include "ptwell/hierarchy.hpp"

namespace {

using ptwell::Coupling;
using ptwell::EliminationPlan;

void BM_ClosedFormMember3(benchmark::State& state) {
  const auto h = ptwell::build_hierarchy(Coupling(8.0), EliminationPlan::parse("cupper,clower"), 3, 4);
  const auto psi = h[2].closed_form_eigenfunction(2);
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(BM_ClosedFormMember3);

void BM_IntertwinedMember3(benchmark::State& state) {
  const auto h = ptwell::build_hierarchy(Coupling(8.0), EliminationPlan::parse("cupper,clower"), 3, 4);
  const auto psi = h[2].eigenfunction(2);
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(BM_IntertwinedMember3);

void BM_PotentialV3(benchmark::State& state) {
  const auto h = ptwell::build_hierarchy(Coupling(2.0), EliminationPlan::parse("real,real"), 3, 2);
  const auto& v = h[2].potential;
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(v(x));
    x = x > 0.99 ? -0.99 : x + 1e-3;
  }
}
BENCHMARK(BM_PotentialV3);

void BM_BuildHierarchy(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const auto plan = EliminationPlan::parse(depth == 3 ? "real,real" : "real,real,real");
  for (auto _ : state) benchmark::DoNotOptimize(ptwell::build_hierarchy(Coupling(2.0), plan, depth, 6));
}
BENCHMARK(BM_BuildHierarchy)->Arg(3)->Arg(4);

}  // namespace
