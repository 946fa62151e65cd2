#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qndbec/params.hpp"
#include "qndbec/spectra.hpp"

namespace qndbec {

/// One grid axis. `start`/`stop` are in units of `unit` ("omega_R", "kappa"
/// or "rad/s"); `values()` returns them in rad/s given the reference scales.
struct SweepAxis {
  std::string name;   // omega_sw | eta_max | kappa | omega
  std::string unit;   // omega_R | kappa | rad/s
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  bool log = false;
  // Non-uniform axes (e.g. a list of kappas) list their points here instead.
  std::vector<double> explicit_values;

  void validate() const;
  std::vector<double> values_in_unit() const;
};

struct SweepResult {
  std::string observable;
  std::vector<SweepAxis> axes;
  std::vector<double> values;   // row-major, first axis slowest
  std::vector<bool> mask;       // optional companion mask (same layout)
  std::string params_hash;
  std::string timestamp;

  double at(std::size_t i, std::size_t j) const {
    return values.at(i * static_cast<std::size_t>(axes.at(1).count) + j);
  }
};

/// n_add(0) (exact form) over omega_sw x eta_max, with mask n_add(0) < 1/2.
SweepResult sweep_nadd0(const PhysicalParams& base, const SweepAxis& omega_sw,
                        const SweepAxis& eta_max, unsigned workers = 0);

struct EtaOptimum {
  double omega_sw = 0.0;
  double eta_opt_numeric = 0.0;
  double nadd_min_numeric = 0.0;
  double eta_opt_closed = 0.0;
  double nadd_min_closed = 0.0;  // n_add_min0 closed form
  double kappa = 0.0;
  int iterations = 0;
};

/// Golden-section minimization of the exact n_add(0) over
/// eta_max in [1e-3 kappa, 10 kappa] to relative tolerance 1e-6.
EtaOptimum optimize_eta(double omega_sw, const PhysicalParams& base);

/// n_add_min0 over omega_sw for each kappa; axes are (kappa index, omega_sw).
SweepResult nadd_min_curves(const PhysicalParams& base, const SweepAxis& omega_sw,
                            const std::vector<double>& kappas);

struct FrequencyCurve {
  double omega_sw = 0.0;
  double eta_max = 0.0;
  double omega_m = 0.0;
  SpectrumSeries series;           // n_add(omega)
  std::vector<double> minima;      // omega of every interior local minimum
  double global_minimum_at = 0.0;
};

/// n_add(omega) at eta_opt (closed form) for each omega_sw on
/// [-3 omega_m, 3 omega_m] with `points` samples; local minima are refined by
/// golden section.
std::vector<FrequencyCurve> nadd_frequency_curves(
    const PhysicalParams& base, const std::vector<double>& omega_sw_values,
    int points = 6001);

/// PhysicalParams with omega_sw replaced and the drive set by eta_max.
PhysicalParams with_omega_sw(PhysicalParams p, double omega_sw);

nlohmann::json to_json(const SweepAxis& a);
nlohmann::json manifest_json(const SweepResult& r);
nlohmann::json to_json(const EtaOptimum& o);

}  // namespace qndbec
