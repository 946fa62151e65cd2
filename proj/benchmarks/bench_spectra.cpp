#include <benchmark/benchmark.h>

#include <cmath>

#include "qndbec/spectra.hpp"

using namespace qndbec;

namespace {

EffectiveModel desk() {
  EffectiveModel m{10.0, 1e-3, 1.0, 0.0, 1.0, 0.0};
  m.G = std::sqrt(5.0 * m.kappa * m.gamma / 2.0);
  return m;
}

void BM_NAddPoint(benchmark::State& s) {
  const EffectiveModel m = desk();
  double w = 0.1;
  for (auto _ : s) {
    benchmark::DoNotOptimize(n_add(w, m));
    w += 1e-9;
  }
}
BENCHMARK(BM_NAddPoint);

void BM_DefaultGrid(benchmark::State& s) {
  const EffectiveModel m = desk();
  const auto grid = default_grid(m, static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(evaluate(SpectrumKind::NAdd, grid, m));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
BENCHMARK(BM_DefaultGrid)->Arg(4001)->Arg(40001);

void BM_VarianceIntegral(benchmark::State& s) {
  const EffectiveModel m = desk();
  for (auto _ : s) benchmark::DoNotOptimize(variance_from_spectrum(SpectrumKind::SP, m));
}
BENCHMARK(BM_VarianceIntegral);

}  // namespace
