#pragma once

#include <array>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qndbec/config.hpp"
#include "qndbec/errors.hpp"

namespace qndbec {

/// Raw experimental inputs. Frequencies and rates are angular (rad/s).
struct PhysicalParams {
  double N = 0.0;         // atom count
  double m_a = 0.0;       // atomic mass (kg)
  double omega_a = 0.0;   // atomic transition frequency
  double omega_c = 0.0;   // bare cavity frequency
  std::optional<double> omega_p;  // pump carrier; defaults to omega_c
  double g0 = 0.0;        // vacuum Rabi frequency
  double L = 0.0;         // cavity length (m); only needed for the a_s path
  double kappa = 0.0;     // cavity decay, chi_c = (kappa/2 - i w)^-1
  double gamma = 0.0;     // Bogoliubov damping, chi_m = (gamma/2 - i w)^-1

  // Either omega_sw directly, or a_s and w from which it is computed.
  std::optional<double> omega_sw;
  std::optional<double> a_s;
  std::optional<double> w;

  /// Overrides the recoil frequency computed from m_a and omega_p.
  std::optional<double> omega_R;

  // Drive strength: peak intracavity amplitude, or the pump amplitude it is
  // derived from. Exactly one may be set; neither means alpha_max = 0.
  std::optional<double> alpha_max;
  std::optional<double> eta_max;

  double n_th_b = 0.0;
  double n_th_a = 0.0;
  double Delta_c = 0.0;
};

/// Effective optomechanical quantities.
struct DerivedParams {
  double omega_R = 0.0;
  double Delta_a = 0.0;
  double U0 = 0.0;
  double g = 0.0;
  double omega_sw = 0.0;
  double Omega_c = 0.0;
  double Omega_plus = 0.0;
  double Omega_minus = 0.0;
  double chi = 1.0;
  double omega_m = 0.0;
  double G = 0.0;
  double k_wavenumber = 0.0;
  double alpha_max = 0.0;
  double eta_max = 0.0;
  double phi = 0.0;
  Diagnostics diagnostics;
};

/// The handful of numbers the spectra, drive and simulation code actually use.
/// Building one directly (instead of from PhysicalParams) is how scaled,
/// dimensionless test configurations are expressed.
struct EffectiveModel {
  double kappa = 0.0;
  double gamma = 0.0;
  double omega_m = 0.0;
  double G = 0.0;
  double alpha_max = 0.0;
  double n_th_b = 0.0;

  double coupling() const { return G * alpha_max; }
};

/// Throws ValidationError on a violated input invariant.
void validate(const PhysicalParams& p);

/// Computes every derived quantity. Throws NonPositiveOmegaMinus when the
/// Bogoliubov transformation is undefined; a weak dispersive regime only adds
/// a diagnostic.
DerivedParams derive_params(const PhysicalParams& p);

EffectiveModel effective_model(const PhysicalParams& p, const DerivedParams& d);

/// Pump amplitude that produces a given peak intracavity amplitude, and back.
double eta_from_alpha(double alpha_max, double kappa, double omega_m);
double alpha_from_eta(double eta_max, double kappa, double omega_m);

/// Copy of `m` driven at pump amplitude `eta_max`.
EffectiveModel with_eta(EffectiveModel m, double eta_max);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Maps (c, c^dagger) to (b, b^dagger). Requires chi > 0.
Matrix2 bogoliubov_matrix(double chi);

struct LatticeDepthCheck {
  bool pass = true;
  double ratio = 0.0;  // U0 <n> / (10 omega_R); pass iff ratio <= 1
};

LatticeDepthCheck validate_lattice_depth(double U0, double mean_photon_number,
                                         double omega_R);

/// Mean photon number used for the lattice-depth check: the time average
/// alpha_max^2 / 2 of the modulated field.
inline double mean_photon_number(double alpha_max) {
  return 0.5 * alpha_max * alpha_max;
}

double omega_sw_from_geometry(double a_s, double N, double m_a, double L,
                              double w);

/// Reads PhysicalParams from a flat config. Relative units (omega_R, kappa,
/// gamma) resolve against the config's own values.
PhysicalParams physical_params_from_config(const Config& cfg);

/// UnitContext populated from a config and the derived parameters, for
/// resolving simulation and sweep keys.
UnitContext unit_context(const PhysicalParams& p, const DerivedParams& d);

nlohmann::json to_json(const PhysicalParams& p);
nlohmann::json to_json(const DerivedParams& d);
nlohmann::json to_json(const EffectiveModel& m);

}  // namespace qndbec
