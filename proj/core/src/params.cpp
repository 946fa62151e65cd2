#include "qndbec/params.hpp"

#include <cmath>
#include <sstream>

#include "qndbec/constants.hpp"

namespace qndbec {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be a finite positive number");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be a finite non-negative number");
  }
}

double pump_frequency(const PhysicalParams& p) { return p.omega_p.value_or(p.omega_c); }

double recoil_frequency(const PhysicalParams& p) {
  if (p.omega_R) return *p.omega_R;
  const double k = pump_frequency(p) / Constants::c_light;
  return Constants::hbar * k * k / (2.0 * p.m_a);
}

}  // namespace

void validate(const PhysicalParams& p) {
  if (!(p.N >= 1.0)) throw ValidationError("N must be at least 1");
  if (!p.omega_R) require_positive(p.m_a, "m_a");
  else require_positive(*p.omega_R, "omega_R");
  require_positive(p.omega_a, "omega_a");
  require_positive(p.omega_c, "omega_c");
  if (p.omega_p) require_positive(*p.omega_p, "omega_p");
  require_positive(p.g0, "g0");
  require_positive(p.kappa, "kappa");
  require_positive(p.gamma, "gamma");
  require_nonnegative(p.n_th_b, "n_th_b");
  require_nonnegative(p.n_th_a, "n_th_a");
  if (!std::isfinite(p.Delta_c)) throw ValidationError("Delta_c must be finite");

  if (p.omega_sw) {
    if (!std::isfinite(*p.omega_sw)) throw ValidationError("omega_sw must be finite");
  } else {
    if (!p.a_s || !p.w) {
      throw ValidationError("either omega_sw or both a_s and w must be given");
    }
    require_positive(p.L, "L");
    require_positive(p.m_a, "m_a");
    require_positive(*p.w, "w");
    require_nonnegative(*p.a_s, "a_s");
  }

  if (p.alpha_max && p.eta_max) {
    throw ValidationError("give either alpha_max or eta_max, not both");
  }
  if (p.alpha_max) require_nonnegative(*p.alpha_max, "alpha_max");
  if (p.eta_max) require_nonnegative(*p.eta_max, "eta_max");
}

double omega_sw_from_geometry(double a_s, double N, double m_a, double L, double w) {
  return 8.0 * kPi * Constants::hbar * a_s * N / (m_a * L * w * w);
}

double eta_from_alpha(double alpha_max, double kappa, double omega_m) {
  return alpha_max * std::sqrt(0.25 * kappa * kappa + omega_m * omega_m);
}

double alpha_from_eta(double eta_max, double kappa, double omega_m) {
  return eta_max / std::sqrt(0.25 * kappa * kappa + omega_m * omega_m);
}

EffectiveModel with_eta(EffectiveModel m, double eta_max) {
  m.alpha_max = alpha_from_eta(eta_max, m.kappa, m.omega_m);
  return m;
}

DerivedParams derive_params(const PhysicalParams& p) {
  validate(p);
  DerivedParams d;

  const double omega_p = pump_frequency(p);
  d.k_wavenumber = omega_p / Constants::c_light;
  d.omega_R = recoil_frequency(p);
  d.Delta_a = omega_p - p.omega_a;
  if (d.Delta_a == 0.0) throw ValidationError("pump is resonant with the atoms (Delta_a = 0)");
  d.U0 = p.g0 * p.g0 / d.Delta_a;
  d.g = d.U0 * std::sqrt(2.0 * p.N) / 4.0;

  if (std::abs(d.Delta_a) < 100.0 * p.g0) {
    std::ostringstream msg;
    msg << "|Delta_a| / g0 = " << std::abs(d.Delta_a) / p.g0
        << " < 100; the dispersive model is marginal";
    d.diagnostics.push_back({"DispersiveRegimeViolation", msg.str()});
  }

  d.omega_sw = p.omega_sw ? *p.omega_sw
                          : omega_sw_from_geometry(*p.a_s, p.N, p.m_a, p.L, *p.w);
  d.Omega_c = 4.0 * d.omega_R + d.omega_sw;
  d.Omega_plus = d.Omega_c + 0.5 * d.omega_sw;
  d.Omega_minus = d.Omega_c - 0.5 * d.omega_sw;
  if (!(d.Omega_minus > 0.0)) {
    throw NonPositiveOmegaMinus("Omega_minus = 4 omega_R + omega_sw / 2 must be positive");
  }
  d.chi = std::pow(d.Omega_plus / d.Omega_minus, 0.25);
  d.omega_m = std::sqrt(d.Omega_plus * d.Omega_minus);
  d.G = d.g / d.chi;

  if (p.eta_max) {
    d.eta_max = *p.eta_max;
    d.alpha_max = alpha_from_eta(d.eta_max, p.kappa, d.omega_m);
  } else {
    d.alpha_max = p.alpha_max.value_or(0.0);
    d.eta_max = eta_from_alpha(d.alpha_max, p.kappa, d.omega_m);
  }
  d.phi = std::atan2(2.0 * d.omega_m, p.kappa);

  const auto depth = validate_lattice_depth(std::abs(d.U0), mean_photon_number(d.alpha_max),
                                            d.omega_R);
  if (!depth.pass) {
    std::ostringstream msg;
    msg << "U0 <a^dagger a> / (10 omega_R) = " << depth.ratio
        << " > 1; the single-mode Bogoliubov expansion is not justified";
    d.diagnostics.push_back({"LatticeTooDeep", msg.str()});
  }
  return d;
}

EffectiveModel effective_model(const PhysicalParams& p, const DerivedParams& d) {
  return {p.kappa, p.gamma, d.omega_m, d.G, d.alpha_max, p.n_th_b};
}

Matrix2 bogoliubov_matrix(double chi) {
  if (!(chi > 0.0)) throw ValidationError("chi must be positive");
  const double diag = (chi * chi + 1.0) / (2.0 * chi);
  const double off = (chi * chi - 1.0) / (2.0 * chi);
  return {{{diag, off}, {off, diag}}};
}

LatticeDepthCheck validate_lattice_depth(double U0, double n_photons, double omega_R) {
  LatticeDepthCheck r;
  r.ratio = U0 * n_photons / (10.0 * omega_R);
  r.pass = U0 * n_photons <= 10.0 * omega_R;
  return r;
}

PhysicalParams physical_params_from_config(const Config& cfg) {
  using D = Dimension;
  PhysicalParams p;
  p.N = cfg.quantity("N", D::Dimensionless);
  p.omega_a = cfg.quantity("omega_a", D::AngularFrequency);
  p.omega_c = cfg.quantity("omega_c", D::AngularFrequency);
  p.omega_p = cfg.optional_quantity("omega_p", D::AngularFrequency);
  p.g0 = cfg.quantity("g0", D::AngularFrequency);
  if (auto L = cfg.optional_quantity("L", D::Length)) p.L = *L;
  if (auto m = cfg.optional_quantity("m_a", D::Mass)) p.m_a = *m;

  UnitContext ctx;
  p.omega_R = cfg.optional_quantity("omega_R", D::AngularFrequency);
  if (p.omega_R) {
    ctx.omega_R = p.omega_R;
  } else {
    if (!cfg.has("m_a")) cfg.require("m_a");  // names the missing key
    const double k = p.omega_p.value_or(p.omega_c) / Constants::c_light;
    ctx.omega_R = Constants::hbar * k * k / (2.0 * p.m_a);
  }

  p.kappa = cfg.quantity("kappa", D::AngularFrequency, ctx);
  ctx.kappa = p.kappa;
  p.gamma = cfg.quantity("gamma", D::AngularFrequency, ctx);
  ctx.gamma = p.gamma;

  p.omega_sw = cfg.optional_quantity("omega_sw", D::AngularFrequency, ctx);
  p.a_s = cfg.optional_quantity("a_s", D::Length);
  p.w = cfg.optional_quantity("w", D::Length);
  if (!p.omega_sw && !(p.a_s && p.w)) cfg.require("omega_sw");

  p.alpha_max = cfg.optional_quantity("alpha_max", D::Dimensionless);
  p.eta_max = cfg.optional_quantity("eta_max", D::AngularFrequency, ctx);
  p.n_th_b = cfg.optional_quantity("n_th_b", D::Dimensionless).value_or(0.0);
  p.n_th_a = cfg.optional_quantity("n_th_a", D::Dimensionless).value_or(0.0);
  p.Delta_c = cfg.optional_quantity("Delta_c", D::AngularFrequency, ctx).value_or(0.0);
  return p;
}

UnitContext unit_context(const PhysicalParams& p, const DerivedParams& d) {
  UnitContext ctx;
  ctx.omega_R = d.omega_R;
  ctx.kappa = p.kappa;
  ctx.gamma = p.gamma;
  ctx.omega_m = d.omega_m;
  return ctx;
}

nlohmann::json to_json(const PhysicalParams& p) {
  nlohmann::json j;
  j["N"] = p.N;
  j["m_a"] = p.m_a;
  j["omega_a"] = p.omega_a;
  j["omega_c"] = p.omega_c;
  j["omega_p"] = p.omega_p.value_or(p.omega_c);
  j["g0"] = p.g0;
  j["L"] = p.L;
  j["kappa"] = p.kappa;
  j["gamma"] = p.gamma;
  if (p.omega_sw) j["omega_sw"] = *p.omega_sw;
  if (p.a_s) j["a_s"] = *p.a_s;
  if (p.w) j["w"] = *p.w;
  if (p.omega_R) j["omega_R"] = *p.omega_R;
  if (p.alpha_max) j["alpha_max"] = *p.alpha_max;
  if (p.eta_max) j["eta_max"] = *p.eta_max;
  j["n_th_b"] = p.n_th_b;
  j["n_th_a"] = p.n_th_a;
  j["Delta_c"] = p.Delta_c;
  return j;
}

nlohmann::json to_json(const DerivedParams& d) {
  nlohmann::json j;
  j["omega_R"] = d.omega_R;
  j["Delta_a"] = d.Delta_a;
  j["U0"] = d.U0;
  j["g"] = d.g;
  j["omega_sw"] = d.omega_sw;
  j["Omega_c"] = d.Omega_c;
  j["Omega_plus"] = d.Omega_plus;
  j["Omega_minus"] = d.Omega_minus;
  j["chi"] = d.chi;
  j["omega_m"] = d.omega_m;
  j["G"] = d.G;
  j["k_wavenumber"] = d.k_wavenumber;
  j["alpha_max"] = d.alpha_max;
  j["eta_max"] = d.eta_max;
  j["phi"] = d.phi;
  j["omega_m_over_omega_R"] = d.omega_m / d.omega_R;
  auto diags = nlohmann::json::array();
  for (const auto& x : d.diagnostics) diags.push_back({{"code", x.code}, {"message", x.message}});
  j["diagnostics"] = diags;
  return j;
}

nlohmann::json to_json(const EffectiveModel& m) {
  return {{"kappa", m.kappa},   {"gamma", m.gamma},         {"omega_m", m.omega_m},
          {"G", m.G},           {"alpha_max", m.alpha_max}, {"n_th_b", m.n_th_b}};
}

}  // namespace qndbec
