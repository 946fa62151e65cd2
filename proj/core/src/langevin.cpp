#include "qndbec/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "qndbec/constants.hpp"
#include "qndbec/errors.hpp"
#include "qndbec/io.hpp"
#include "qndbec/parallel.hpp"
#include "qndbec/spectra.hpp"
#include "qndbec/spectral_estimate.hpp"

namespace qndbec {

std::string_view to_string(DriveMode m) {
  return m == DriveMode::Modulated ? "modulated" : "constant";
}

DriveMode drive_mode_from_string(std::string_view s) {
  if (s == "modulated") return DriveMode::Modulated;
  if (s == "constant") return DriveMode::Constant;
  throw std::invalid_argument("unknown drive mode '" + std::string(s) +
                              "' (modulated or constant)");
}

namespace {

// Slow-mode (Q, P) input noise is injected once per this many steps with the
// exact OU variance of the whole interval.
constexpr int kSlowNoiseStride = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

bool below(double value, double bound) { return value < bound * (1.0 - 1e-12); }

// Precomputed one-period tables of the per-step forcing weights.
struct StepTables {
  std::vector<double> q_from_x, p_from_x, y_from_q, y_from_p;
};

struct Stepper {
  double dt = 0.0;
  long steps_per_sample = 1;
  double decay_x = 0.0, noise_x = 0.0;
  double decay_y = 0.0, noise_y = 0.0, sigma_yin = 0.0;
  double decay_slow = 0.0, noise_slow = 0.0, decay_slow_stride = 0.0;
  StepTables tables;
};

// phi1(z) = (1 - e^{-z}) / z, the exponential-integrator weight.
double phi1(double z) { return z < 1e-8 ? 1.0 - 0.5 * z : -std::expm1(-z) / z; }

Stepper make_stepper(const EffectiveModel& m, const NoiseConfig& noise, const SimConfig& sim) {
  Stepper s;
  s.dt = sim.dt;
  s.steps_per_sample = std::max(1L, std::lround(sim.sample_interval / sim.dt));
  const double dt = sim.dt;
  const double var_a = noise.n_th_a + 0.5;
  const double var_b = noise.n_th_b + 0.5;

  s.decay_x = std::exp(-0.5 * m.kappa * dt);
  s.noise_x = std::sqrt(var_a * -std::expm1(-m.kappa * dt));
  s.decay_y = s.decay_x;
  const double phi_k = phi1(0.5 * m.kappa * dt);
  s.noise_y = std::sqrt(m.kappa) * phi_k * std::sqrt(var_a * dt);
  s.sigma_yin = std::sqrt(var_a / dt);
  s.decay_slow = std::exp(-0.5 * m.gamma * dt);
  s.decay_slow_stride = std::exp(-0.5 * m.gamma * dt * kSlowNoiseStride);
  s.noise_slow = std::sqrt(var_b * -std::expm1(-m.gamma * dt * kSlowNoiseStride));

  const double phi_g = phi1(0.5 * m.gamma * dt);
  const long period = std::lround(kTwoPi / (m.omega_m * dt));
  const double c0 = 2.0 * m.coupling();
  auto& t = s.tables;
  t.q_from_x.resize(period);
  t.p_from_x.resize(period);
  t.y_from_q.resize(period);
  t.y_from_p.resize(period);
  for (long j = 0; j < period; ++j) {
    const double ph = m.omega_m * (j + 0.5) * dt;
    const double c = sim.drive_mode == DriveMode::Modulated ? c0 * std::cos(ph) : c0;
    t.q_from_x[j] = phi_g * dt * c * std::sin(ph);
    t.p_from_x[j] = -phi_g * dt * c * std::cos(ph);
    t.y_from_q[j] = -phi_k * dt * c * std::cos(ph);
    t.y_from_p[j] = -phi_k * dt * c * std::sin(ph);
  }
  return s;
}

[[noreturn]] void diverged(double t) {
  std::ostringstream msg;
  msg << "simulation diverged (|state| > 1e6) at t = " << t
      << "; the drift may be unstable or dt too large";
  throw DivergenceError(msg.str());
}

Trajectory run_one(const Stepper& s, const SimConfig& sim, std::uint64_t seed,
                   std::size_t n_samples, long settle_samples) {
  boost::random::mt19937_64 rng(seed);
  boost::random::normal_distribution<double> normal;

  Trajectory tr;
  tr.seed = seed;
  tr.X.resize(n_samples);
  tr.Q.resize(n_samples);
  tr.P.resize(n_samples);
  if (sim.track_readout) {
    tr.Y.resize(n_samples);
    tr.Y_in.resize(n_samples);
  }

  const auto& tab = s.tables;
  const long period = static_cast<long>(tab.q_from_x.size());
  double X = 0.0, Y = 0.0, Q = 0.0, P = 0.0;
  long j = 0;
  int slow = 0;
  const double inv_block = 1.0 / static_cast<double>(s.steps_per_sample);
  const long total_samples = settle_samples + static_cast<long>(n_samples);

  for (long k = 0; k < total_samples; ++k) {
    double sx = 0.0, sy = 0.0, sq = 0.0, sp = 0.0, syin = 0.0;
    for (long i = 0; i < s.steps_per_sample; ++i) {
      const double x1 = s.decay_x * X + s.noise_x * normal(rng);
      const double xm = 0.5 * (X + x1);
      double q1 = s.decay_slow * Q + tab.q_from_x[j] * xm;
      double p1 = s.decay_slow * P + tab.p_from_x[j] * xm;
      if (sim.track_readout) {
        const double xi = normal(rng);
        const double qm = 0.5 * (Q + q1), pm = 0.5 * (P + p1);
        Y = s.decay_y * Y + tab.y_from_q[j] * qm + tab.y_from_p[j] * pm + s.noise_y * xi;
        sy += Y;
        syin += xi;
      }
      if (++slow == kSlowNoiseStride) {
        slow = 0;
        q1 += s.noise_slow * normal(rng);
        p1 += s.noise_slow * normal(rng);
      }
      X = x1;
      Q = q1;
      P = p1;
      sx += X;
      sq += Q;
      sp += P;
      if (++j == period) j = 0;
    }
    if (!(std::abs(X) < 1e6 && std::abs(Q) < 1e6 && std::abs(P) < 1e6 && std::abs(Y) < 1e6)) {
      diverged(static_cast<double>(k + 1) * s.steps_per_sample * s.dt);
    }
    if (k < settle_samples) continue;
    const auto r = static_cast<std::size_t>(k - settle_samples);
    tr.X[r] = sx * inv_block;
    tr.Q[r] = sq * inv_block;
    tr.P[r] = sp * inv_block;
    if (sim.track_readout) {
      tr.Y[r] = sy * inv_block;
      tr.Y_in[r] = s.sigma_yin * syin * inv_block;
    }
  }
  return tr;
}

}  // namespace

SimConfig resolve(const SimConfig& sim, const EffectiveModel& m) {
  if (!(m.kappa > 0.0) || !(m.gamma > 0.0) || !(m.omega_m > 0.0)) {
    throw ValidationError("simulation needs kappa, gamma and omega_m > 0");
  }
  SimConfig r = sim;
  if (r.dt == 0.0) r.dt = 0.01 / m.kappa;
  if (r.t_settle == 0.0) r.t_settle = 10.0 / m.gamma;
  if (r.t_record == 0.0) r.t_record = 50.0 / m.gamma;
  if (r.sample_interval == 0.0) r.sample_interval = kPi / (4.0 * m.omega_m);

  if (!(r.dt > 0.0) || r.dt * m.kappa > 0.02 * (1.0 + 1e-12)) {
    throw ValidationError("dt must satisfy 0 < dt kappa <= 0.02");
  }
  if (below(r.t_settle, 10.0 / m.gamma)) throw ValidationError("t_settle must be >= 10/gamma");
  if (below(r.t_record, 50.0 / m.gamma)) throw ValidationError("t_record must be >= 50/gamma");
  if (r.n_traj < 16) throw ValidationError("n_traj must be >= 16");
  if (!(r.sample_interval > 0.0)) throw ValidationError("sample_interval must be > 0");

  // An integer number of steps per drive period keeps the coefficient tables exact.
  const double period = kTwoPi / m.omega_m;
  r.dt = period / std::ceil(period / r.dt);
  r.sample_interval = r.dt * std::max(1.0, std::round(r.sample_interval / r.dt));
  return r;
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ (index * 0x9E3779B97F4A7C15ull)));
}

TrajectoryEnsemble TrajectoryEnsemble::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > n_samples) throw std::out_of_range("slice outside the record");
  TrajectoryEnsemble out = *this;
  out.n_samples = end - begin;
  auto cut = [&](std::vector<double>& v) {
    if (v.empty()) return;
    v = std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(begin),
                            v.begin() + static_cast<std::ptrdiff_t>(end));
  };
  for (auto& t : out.trajectories) {
    cut(t.X);
    cut(t.Y);
    cut(t.Q);
    cut(t.P);
    cut(t.Y_in);
  }
  return out;
}

TrajectoryEnsemble simulate(const EffectiveModel& m, const NoiseConfig& noise,
                            const SimConfig& sim_in, unsigned workers) {
  if (noise.n_th_a < 0.0 || noise.n_th_b < 0.0) {
    throw ValidationError("thermal occupations must be >= 0");
  }
  const SimConfig sim = resolve(sim_in, m);
  const Stepper stepper = make_stepper(m, noise, sim);

  TrajectoryEnsemble ens;
  ens.model = m;
  ens.noise = noise;
  ens.sim = sim;
  ens.sample_interval = stepper.dt * static_cast<double>(stepper.steps_per_sample);
  ens.n_samples = static_cast<std::size_t>(std::floor(sim.t_record / ens.sample_interval));
  const long settle = static_cast<long>(std::ceil(sim.t_settle / ens.sample_interval));
  ens.params_hash = params_hash({{"model", to_json(m)}, {"noise", to_json(noise)}, {"sim", to_json(sim)}});
  ens.trajectories.resize(static_cast<std::size_t>(sim.n_traj));

  parallel_for(
      ens.trajectories.size(),
      [&](std::size_t i) {
        ens.trajectories[i] = run_one(stepper, sim, trajectory_seed(noise.seed, i), ens.n_samples, settle);
      },
      workers);
  return ens;
}

CommutatorSpectrum commutator_spectrum(DriveMode mode, double alpha_max) {
  CommutatorSpectrum c;
  if (mode == DriveMode::Modulated) {
    // cos(w t) sin(w t) = sin(2 w t) / 2, split over e^{+-2 i w t}
    c.at_2omega_m = 0.25 * std::abs(alpha_max);
  } else {
    c.at_omega_m = 0.5 * std::abs(alpha_max);
  }
  return c;
}

QndReport qnd_commutator_check(const EffectiveModel& m, const NoiseConfig& noise,
                               const SimConfig& sim, unsigned workers) {
  QndReport r;
  r.commutator = commutator_spectrum(sim.drive_mode, m.alpha_max);
  r.stable = drift_is_stable(m, sim.drive_mode);
  r.leakage_band_lo = m.omega_m;
  r.leakage_band_hi = 3.0 * m.omega_m;

  const TrajectoryEnsemble ens = simulate(m, noise, sim, workers);
  const auto est = estimate_band_power(ens, Observable::Q, r.leakage_band_lo, r.leakage_band_hi);
  r.leakage_sim = est.value;
  r.leakage_sim_error = est.error;
  r.leakage_pred = band_power(SpectrumKind::SQ, m, r.leakage_band_lo, r.leakage_band_hi);
  return r;
}

nlohmann::json to_json(const SimConfig& s) {
  return {{"dt", s.dt},
          {"t_settle", s.t_settle},
          {"t_record", s.t_record},
          {"n_traj", s.n_traj},
          {"drive_mode", std::string(to_string(s.drive_mode))},
          {"sample_interval", s.sample_interval},
          {"track_readout", s.track_readout}};
}

nlohmann::json to_json(const NoiseConfig& n) {
  return {{"n_th_b", n.n_th_b}, {"n_th_a", n.n_th_a}, {"seed", n.seed}};
}

nlohmann::json to_json(const QndReport& r) {
  return {{"commutator",
           {{"dc", r.commutator.dc},
            {"at_omega_m", r.commutator.at_omega_m},
            {"at_2omega_m", r.commutator.at_2omega_m}}},
          {"leakage_band", {r.leakage_band_lo, r.leakage_band_hi}},
          {"leakage_sim", r.leakage_sim},
          {"leakage_sim_error", r.leakage_sim_error},
          {"leakage_pred", r.leakage_pred},
          {"stable", r.stable}};
}

}  // namespace qndbec
