#include <benchmark/benchmark.h>

#include <cmath>

#include "qndbec/langevin.hpp"
#include "qndbec/spectral_estimate.hpp"

using namespace qndbec;

namespace {

EffectiveModel quick() {
  EffectiveModel m{10.0, 1e-1, 1.0, 0.0, 1.0, 0.0};
  m.G = std::sqrt(5.0 * m.kappa * m.gamma / 2.0);
  return m;
}

SimConfig sim(bool readout) {
  SimConfig s;
  s.dt = 0.02 / 10.0;
  s.n_traj = 16;
  s.t_record = 100.0 / 0.1;
  s.sample_interval = 0.5;
  s.track_readout = readout;
  return s;
}

// Items are integrator steps summed over trajectories.
void BM_Simulate(benchmark::State& s) {
  const EffectiveModel m = quick();
  const SimConfig c = resolve(sim(s.range(0) != 0), m);
  NoiseConfig n;
  for (auto _ : s) {
    n.seed++;
    benchmark::DoNotOptimize(simulate(m, n, c, 1));
  }
  const double steps = (c.t_settle + c.t_record) / c.dt * c.n_traj;
  s.SetItemsProcessed(static_cast<long>(s.iterations() * steps));
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Welch(benchmark::State& s) {
  const EffectiveModel m = quick();
  NoiseConfig n;
  const auto ens = simulate(m, n, resolve(sim(false), m), 1);
  WelchOptions w;
  w.segment_length = 16.0 / m.gamma;
  for (auto _ : s) benchmark::DoNotOptimize(estimate_spectrum(ens, Observable::Q, w));
}
BENCHMARK(BM_Welch)->Unit(benchmark::kMillisecond);

void BM_Floquet(benchmark::State& s) {
  const EffectiveModel m = quick();
  for (auto _ : s) benchmark::DoNotOptimize(floquet_multipliers(m, DriveMode::Modulated));
}
BENCHMARK(BM_Floquet);

}  // namespace
