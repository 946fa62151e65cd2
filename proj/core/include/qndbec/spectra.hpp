#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qndbec/params.hpp"

namespace qndbec {

// Susceptibilities.
std::complex<double> chi_c(double omega, double kappa);
std::complex<double> chi_m(double omega, double gamma);

// Back-action bookkeeping. All take the angular frequency omega in rad/s
// (or whatever unit the EffectiveModel's rates are expressed in).
double n_bad(double omega, const EffectiveModel& m);
double n_ba(double omega, const EffectiveModel& m);
/// Good-cavity (kappa << omega_m) resonance values.
double n_bad0_good_cavity(const EffectiveModel& m);
double n_ba0_good_cavity(const EffectiveModel& m);

/// Back-action quanta reaching Q when the drive is a constant amplitude
/// alpha_max instead of the two-tone modulation (reference for simulations).
double n_q_constant_drive(double omega, const EffectiveModel& m);

double s_q(double omega, const EffectiveModel& m);
double s_p(double omega, const EffectiveModel& m);

std::complex<double> gain(double omega, const EffectiveModel& m);
double response_a(double omega, const EffectiveModel& m);

/// Added noise at the output referred to Q. Throws ZeroGain when
/// alpha_max == 0.
double n_add(double omega, const EffectiveModel& m);

/// The four contributions of n_add, in order.
struct NAddTerms {
  double imprecision = 0.0;
  double bad = 0.0;
  double sideband_back_action = 0.0;
  double mean_field = 0.0;
  double total() const { return imprecision + bad + sideband_back_action + mean_field; }
};
NAddTerms n_add_terms(double omega, const EffectiveModel& m);

double s_yout(double omega, const EffectiveModel& m);

// Resonant closed forms, valid for gamma << omega_m, kappa.
double n_add0_approx(const EffectiveModel& m);
double eta_opt(const EffectiveModel& m);
double n_add_min0(double kappa, double omega_m);
inline double n_add_min0(const EffectiveModel& m) {
  return n_add_min0(m.kappa, m.omega_m);
}

/// Adds RegimeWarning diagnostics when gamma / omega_m or gamma / kappa
/// exceed 0.05.
Diagnostics regime_diagnostics(const EffectiveModel& m);

struct NoiseBudget {
  double n_bad_0 = 0.0;
  double n_BA_0 = 0.0;
  double n_add_0_exact = 0.0;
  double n_add_0_approx = 0.0;
  double n_add_min_0 = 0.0;
  double eta_opt = 0.0;
  double eta_max = 0.0;
  bool sql_beaten = false;
  Diagnostics diagnostics;
};

NoiseBudget noise_budget(const EffectiveModel& m);

enum class SpectrumKind { SQ, SP, SYout, NAdd, NBad, NBA, A };

std::string_view to_string(SpectrumKind k);
SpectrumKind spectrum_kind_from_string(std::string_view s);

/// Real spectrum on a strictly increasing angular-frequency grid. `error` is
/// empty for analytic series and holds standard errors for estimated ones.
struct SpectrumSeries {
  std::string label;
  std::vector<double> omega;
  std::vector<double> values;
  std::vector<double> error;
};

double evaluate(SpectrumKind k, double omega, const EffectiveModel& m);
SpectrumSeries evaluate(SpectrumKind k, const std::vector<double>& grid,
                        const EffectiveModel& m);

/// Symmetric grid over +-3 omega_m max(1, kappa/omega_m) with `points`
/// samples, plus 0 and +-2 omega_m inserted exactly.
std::vector<double> default_grid(const EffectiveModel& m, int points = 4001);

/// Symmetric linear grid over [-half_width, half_width] with the same exact
/// insertions.
std::vector<double> symmetric_grid(double half_width, int points,
                                   double omega_m);

/// Integral of a spectral density over all frequencies divided by 2 pi,
/// i.e. the symmetrized variance. The integrand is weighted by the
/// Bogoliubov Lorentzian, so the substitution omega = gamma/2 tan(theta) is
/// used.
double variance_from_spectrum(SpectrumKind k, const EffectiveModel& m);

/// Same integral restricted to omega_lo <= |omega| <= omega_hi (both signs).
double band_power(SpectrumKind k, const EffectiveModel& m, double omega_lo,
                  double omega_hi);

nlohmann::json to_json(const NoiseBudget& b);

}  // namespace qndbec
