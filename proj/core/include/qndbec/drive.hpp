#pragma once

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

#include "qndbec/params.hpp"

namespace qndbec {

using cplx = std::complex<double>;

/// Amplitude-modulated pump eta(t) = eta_max cos(omega_mod t + phi), which is
/// the same as two tones at omega_p +- omega_mod with amplitude eta_max / 2.
struct DriveSpec {
  double alpha_max = 0.0;
  double eta_max = 0.0;
  double phi = 0.0;
  double omega_mod = 0.0;

  double eta(double t) const;
  double tone_amplitude() const { return 0.5 * eta_max; }
};

DriveSpec design_drive(double alpha_max, double kappa, double omega_m);

/// Nonzero Fourier components of the Bogoliubov mean field under the designed
/// drive, beta(t) = sum_n beta_n exp(i n omega_m t) for n in {0, 2, -2}.
struct BetaComponents {
  cplx beta_0, beta_2, beta_m2;
  cplx beta_bar_0, beta_bar_2, beta_bar_m2;  // beta_n + conj(beta_{-n})
  // gamma << omega_m limits of beta_0, beta_2, beta_m2
  double approx_0 = 0.0, approx_2 = 0.0, approx_m2 = 0.0;
};

BetaComponents beta_fourier(double G, double alpha_max, double omega_m,
                            double gamma);

/// Static detuning that cancels the mean shift G * beta_bar_0 of the
/// effective cavity detuning.
double compensating_detuning(double G, const BetaComponents& beta);

struct MeanFieldProblem {
  double kappa = 0.0;
  double gamma = 0.0;
  double omega_m = 0.0;
  double G = 0.0;
  double Delta_c = 0.0;
  DriveSpec drive;
};

MeanFieldProblem mean_field_problem(const EffectiveModel& m, double Delta_c = 0.0);

struct MeanFieldOptions {
  double t_span = 0.0;     // 0 selects 20/gamma plus the analysis window
  double dt = 0.0;         // 0 selects 0.005/kappa (rounded to divide a period)
  double tolerance = 1e-6; // step-doubling relative error bound
  int analysis_periods = 8;
  int sample_every = 0;    // trajectory decimation; 0 keeps ~4000 samples
};

struct MeanFieldResult {
  std::vector<double> t;
  std::vector<cplx> alpha;
  std::vector<cplx> beta;

  double dt = 0.0;
  double max_step_error = 0.0;

  /// Harmonic n of alpha over the analysis window (index n + 3, n = -3..3).
  std::vector<cplx> alpha_harmonics;
  std::vector<cplx> beta_harmonics;
  /// Time-averaged Delta'_c = Delta_c - G (beta + beta*) over the window.
  double mean_effective_detuning = 0.0;

  cplx alpha_harmonic(int n) const { return alpha_harmonics.at(n + 3); }
  cplx beta_harmonic(int n) const { return beta_harmonics.at(n + 3); }
};

/// RK4 integration of the coupled mean-field equations with the
/// self-consistent detuning. Throws StiffnessError when the step-doubling
/// error estimate exceeds the tolerance.
MeanFieldResult integrate_meanfield(const MeanFieldProblem& problem,
                                    const MeanFieldOptions& options = {});

nlohmann::json to_json(const DriveSpec& d, double omega_p = 0.0);
nlohmann::json to_json(const BetaComponents& b);

}  // namespace qndbec
