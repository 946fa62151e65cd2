#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qndbec/params.hpp"

namespace qndbec {

struct NoiseConfig {
  double n_th_b = 0.0;
  double n_th_a = 0.0;
  std::uint64_t seed = 1;
};

enum class DriveMode { Modulated, Constant };

std::string_view to_string(DriveMode m);
DriveMode drive_mode_from_string(std::string_view s);

struct SimConfig {
  double dt = 0.0;               // 0 selects 0.01 / kappa
  double t_settle = 0.0;         // 0 selects 10 / gamma
  double t_record = 0.0;         // 0 selects 50 / gamma
  int n_traj = 16;
  DriveMode drive_mode = DriveMode::Modulated;
  double sample_interval = 0.0;  // 0 selects pi / (4 omega_m), rounded to dt
  bool track_readout = true;     // integrate Y and keep the Y_in stream
};

/// Fills defaults and throws ValidationError if dt kappa > 0.02,
/// t_settle < 10/gamma, t_record < 50/gamma or n_traj < 16.
SimConfig resolve(const SimConfig& sim, const EffectiveModel& m);

/// Per-trajectory RNG stream seed: splitmix64 applied to
/// seed ^ (index * golden-ratio constant), twice.
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index);

/// Block means of the quadratures over consecutive sample intervals.
/// `Y_in` holds the block mean of the optical phase-quadrature input noise,
/// so Y_out = Y_in - sqrt(kappa) Y holds sample by sample.
struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<double> X, Y, Q, P, Y_in;
};

struct TrajectoryEnsemble {
  EffectiveModel model;
  NoiseConfig noise;
  SimConfig sim;
  double sample_interval = 0.0;
  std::size_t n_samples = 0;
  std::string params_hash;
  std::vector<Trajectory> trajectories;

  /// Copy restricted to samples [begin, end).
  TrajectoryEnsemble slice(std::size_t begin, std::size_t end) const;
};

/// Integrates the linearized quadrature equations for every trajectory.
/// Modulated mode uses alpha(t) = alpha_max cos(omega_m t); constant mode
/// uses alpha(t) = alpha_max with the same rotating frame. Throws
/// DivergenceError if any state exceeds 1e6.
TrajectoryEnsemble simulate(const EffectiveModel& m, const NoiseConfig& noise,
                            const SimConfig& sim, unsigned workers = 0);

/// Floquet multipliers of the deterministic drift over one coefficient period.
std::vector<std::complex<double>> floquet_multipliers(const EffectiveModel& m,
                                                      DriveMode mode,
                                                      int steps_per_period = 2000);

bool drift_is_stable(const EffectiveModel& m, DriveMode mode);

/// Harmonic content of alpha(t) sin(omega_m t), the factor in [Q, H_I].
struct CommutatorSpectrum {
  double dc = 0.0;
  double at_omega_m = 0.0;      // magnitude of the +-omega_m component
  double at_2omega_m = 0.0;     // magnitude of the +-2 omega_m component
};

CommutatorSpectrum commutator_spectrum(DriveMode mode, double alpha_max);

struct QndReport {
  CommutatorSpectrum commutator;
  double leakage_band_lo = 0.0;   // band |omega| in [lo, hi] used for leakage
  double leakage_band_hi = 0.0;
  double leakage_sim = 0.0;       // Q variance in the band, estimated
  double leakage_sim_error = 0.0;
  double leakage_pred = 0.0;      // same band from the closed-form S_Q
  bool stable = true;
};

/// Reports the commutator harmonics and, from a simulation, the Q variance
/// that sits outside the resonant band (|omega| between omega_m and
/// 3 omega_m), which is the part of Q driven by the non-QND sideband terms.
QndReport qnd_commutator_check(const EffectiveModel& m, const NoiseConfig& noise,
                               const SimConfig& sim, unsigned workers = 0);

nlohmann::json to_json(const SimConfig& s);
nlohmann::json to_json(const NoiseConfig& n);
nlohmann::json to_json(const QndReport& r);

}  // namespace qndbec
