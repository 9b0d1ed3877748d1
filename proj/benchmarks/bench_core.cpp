#include <benchmark/benchmark.h>

#include "ptmag/dynamics.hpp"
#include "ptmag/entanglement.hpp"
#include "ptmag/metrology.hpp"
#include "ptmag/oracle.hpp"
#include "ptmag/sweep.hpp"

using namespace ptmag;

namespace {

// range(0) is Delta in hundredths of Gamma: 100 broken, 200 EP, 300 exact.
EffectiveModel model_for(const benchmark::State& state) {
  return EffectiveModel::pt(1.0 + state.range(0) / 100.0, 1.0, 1.0, 0.01);
}

void BM_Propagator(benchmark::State& state) {
  const auto m = model_for(state);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator(m, t));
    t = t < 5.0 ? t + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_Propagator)->Arg(100)->Arg(200)->Arg(300);

void BM_EvolveMoments(benchmark::State& state) {
  const auto m = model_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_moments(m, InitialCondition::thermal(1.0), 5.0));
}
BENCHMARK(BM_EvolveMoments)->Arg(100)->Arg(300);

void BM_ClosedForm(benchmark::State& state) {
  const auto m = model_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(photon_number_closed_form(m, InitialCondition::vacuum(), 5.0));
}
BENCHMARK(BM_ClosedForm)->Arg(100)->Arg(200)->Arg(300);

void BM_PrecisionPoint(benchmark::State& state) {
  const auto m = model_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(precision_error_propagation(m, InitialCondition::vacuum(), 5.0));
}
BENCHMARK(BM_PrecisionPoint)->Arg(300);

void BM_EffectiveOracle(benchmark::State& state) {
  const auto m = model_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_integrate_effective(m, InitialCondition::vacuum(), 5.0));
}
BENCHMARK(BM_EffectiveOracle)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_FullOracle(benchmark::State& state) {
  PhysicalParams p;
  p.omega1 = 1.5;
  p.omega2 = -1.5;
  p.g13 = p.g23 = 10.0;
  p.kappa = 100.0;
  p.gamma1 = p.gamma2 = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_integrate_full(p, InitialCondition::vacuum(), 5.0));
}
BENCHMARK(BM_FullOracle)->Unit(benchmark::kMillisecond);

void BM_NuMinus(benchmark::State& state) {
  const auto ms = evolve_moments(model_for(state), InitialCondition::vacuum(), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(nu_minus(quadrature_covariance(ms)));
}
BENCHMARK(BM_NuMinus)->Arg(300);

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.detuning = Axis::linear("Delta", 2.0, 4.0, static_cast<std::size_t>(state.range(0)));
  spec.time = Axis::list("t", {2.0, 5.0, 10.0});
  for (auto _ : state) benchmark::DoNotOptimize(sweep_precision(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_Sweep)->Arg(2001)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
