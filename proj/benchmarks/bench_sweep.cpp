#include <benchmark/benchmark.h>

#include "qndbec/constants.hpp"
#include "qndbec/sweep.hpp"

using namespace qndbec;

namespace {

PhysicalParams reference() {
  PhysicalParams p;
  p.N = 5e4;
  p.m_a = 86.909180527 * Constants::atomic_mass_unit;
  p.omega_c = 2.41494e15;
  p.omega_a = 2.41419e15;
  p.g0 = kTwoPi * 14.1e6;
  p.omega_R = kTwoPi * 3.77e3;
  p.kappa = kTwoPi * 13e6;
  p.gamma = 1e-3 * p.kappa;
  p.L = 178e-6;
  p.omega_sw = 0.0;
  p.eta_max = 0.655 * p.kappa;
  return p;
}

void BM_SweepNadd0(benchmark::State& s) {
  const PhysicalParams p = reference();
  const int n = static_cast<int>(s.range(0));
  const SweepAxis ws{"omega_sw", "omega_R", 0, 15, n, false, {}};
  const SweepAxis es{"eta_max", "kappa", 0.01, 3, n, true, {}};
  for (auto _ : s) benchmark::DoNotOptimize(sweep_nadd0(p, ws, es, 1));
  s.SetItemsProcessed(s.iterations() * n * n);
}
BENCHMARK(BM_SweepNadd0)->Arg(51)->Arg(151);

void BM_OptimizeEta(benchmark::State& s) {
  const PhysicalParams p = reference();
  for (auto _ : s) benchmark::DoNotOptimize(optimize_eta(0.0, p));
}
BENCHMARK(BM_OptimizeEta);

void BM_FrequencyCurves(benchmark::State& s) {
  const PhysicalParams p = reference();
  for (auto _ : s) benchmark::DoNotOptimize(nadd_frequency_curves(p, {0.0}, 6001));
}
BENCHMARK(BM_FrequencyCurves)->Unit(benchmark::kMillisecond);

}  // namespace
