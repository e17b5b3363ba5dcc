#include <benchmark/benchmark.h>

#include "tripop/dressed.hpp"
#include "tripop/propagator.hpp"
#include "tripop/pulse.hpp"
#include "tripop/transfer.hpp"

namespace {

const tripop::CouplingRatios kFamily35x1{8.128, 1.0, {0.0, 0.0, 0.0}};
const tripop::CouplingRatios kGeneral{0.7, -1.0, {0.3, -0.4, 1.1}};

void BM_SolveCubicFamily(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tripop::solve_cubic(kFamily35x1));
}
BENCHMARK(BM_SolveCubicFamily);

void BM_SolveCubicGeneral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tripop::solve_cubic(kGeneral));
}
BENCHMARK(BM_SolveCubicGeneral);

void BM_BuildBasis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tripop::build_dressed_basis(kGeneral));
}
BENCHMARK(BM_BuildBasis);

void BM_PopulationsGeneral(benchmark::State& state) {
  const auto basis = tripop::build_dressed_basis(kFamily35x1);
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tripop::populations_general(basis, a));
    a += 1e-3;
  }
}
BENCHMARK(BM_PopulationsGeneral);

void BM_PopulationsClosedForm(benchmark::State& state) {
  const auto cond = tripop::condition_from_odd_pair({23, -11}, -1);
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tripop::populations_closed_form(cond, a));
    a += 1e-3;
  }
}
BENCHMARK(BM_PopulationsClosedForm);

void BM_EnumerateConditions(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tripop::enumerate_conditions(state.range(0)));
}
BENCHMARK(BM_EnumerateConditions)->Arg(35)->Arg(1000);

void BM_IntegrateOnePeriod(benchmark::State& state) {
  const tripop::Pulse drive = tripop::Pulse::harmonic(4.381, 1.0);
  const auto config = tripop::IntegratorConfig::per_period(drive.period(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tripop::integrate(kFamily35x1, tripop::LevelEnergies::degenerate(), drive, drive.period(), config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateOnePeriod)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
