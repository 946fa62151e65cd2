#include "qndbec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qndbec/constants.hpp"
#include "qndbec/drive.hpp"
#include "qndbec/errors.hpp"

namespace qndbec {

std::complex<double> chi_c(double omega, double kappa) {
  return 1.0 / std::complex<double>(0.5 * kappa, -omega);
}

std::complex<double> chi_m(double omega, double gamma) {
  return 1.0 / std::complex<double>(0.5 * gamma, -omega);
}

namespace {

double abs2_chi_c(double omega, double kappa) { return 1.0 / (0.25 * kappa * kappa + omega * omega); }
double abs2_chi_m(double omega, double gamma) { return 1.0 / (0.25 * gamma * gamma + omega * omega); }

void require_gain(const EffectiveModel& m) {
  if (!(m.alpha_max > 0.0) || m.G == 0.0) {
    throw ZeroGain("the measurement gain vanishes (G alpha_max = 0); n_add is undefined");
  }
}

}  // namespace

double n_bad(double omega, const EffectiveModel& m) {
  const double ga = m.coupling();
  return m.kappa / (8.0 * m.gamma) * ga * ga *
         (abs2_chi_c(omega + 2.0 * m.omega_m, m.kappa) +
          abs2_chi_c(omega - 2.0 * m.omega_m, m.kappa));
}

double n_ba(double omega, const EffectiveModel& m) {
  const double ga = m.coupling();
  return m.kappa / (2.0 * m.gamma) * ga * ga * abs2_chi_c(omega, m.kappa);
}

double n_bad0_good_cavity(const EffectiveModel& m) {
  const double ga = m.coupling();
  return m.kappa * ga * ga / (16.0 * m.gamma * m.omega_m * m.omega_m);
}

double n_ba0_good_cavity(const EffectiveModel& m) {
  const double ga = m.coupling();
  return 2.0 * ga * ga / (m.kappa * m.gamma);
}

double n_q_constant_drive(double omega, const EffectiveModel& m) {
  const double ga = m.coupling();
  return m.kappa / (2.0 * m.gamma) * ga * ga *
         (abs2_chi_c(omega + m.omega_m, m.kappa) + abs2_chi_c(omega - m.omega_m, m.kappa));
}

double s_q(double omega, const EffectiveModel& m) {
  return 0.5 * m.gamma * abs2_chi_m(omega, m.gamma) *
         (1.0 + 2.0 * m.n_th_b + 2.0 * n_bad(omega, m));
}

double s_p(double omega, const EffectiveModel& m) {
  return 0.5 * m.gamma * abs2_chi_m(omega, m.gamma) *
         (1.0 + 2.0 * m.n_th_b + 2.0 * n_bad(omega, m) + 2.0 * n_ba(omega, m));
}

std::complex<double> gain(double omega, const EffectiveModel& m) {
  return std::sqrt(m.kappa) * m.coupling() * chi_c(omega, m.kappa);
}

double response_a(double omega, const EffectiveModel& m) {
  return m.gamma * abs2_chi_m(omega, m.gamma) +
         0.5 * m.gamma *
             (abs2_chi_m(omega + 2.0 * m.omega_m, m.gamma) +
              abs2_chi_m(omega - 2.0 * m.omega_m, m.gamma));
}

NAddTerms n_add_terms(double omega, const EffectiveModel& m) {
  require_gain(m);
  const double a = response_a(omega, m);
  const double gain2 = std::norm(gain(omega, m));
  const double sidebands_m = abs2_chi_m(omega + 2.0 * m.omega_m, m.gamma) +
                             abs2_chi_m(omega - 2.0 * m.omega_m, m.gamma);
  const double sidebands_c = abs2_chi_c(omega + 2.0 * m.omega_m, m.kappa) +
                             abs2_chi_c(omega - 2.0 * m.omega_m, m.kappa);

  const BetaComponents beta = beta_fourier(m.G, m.alpha_max, m.omega_m, m.gamma);
  // Both products are real up to rounding (beta_bar_-2 = conj(beta_bar_2)).
  const double b00 = (beta.beta_bar_0 * beta.beta_bar_0).real();
  const double b2m2 = (beta.beta_bar_2 * beta.beta_bar_m2).real();

  NAddTerms t;
  t.imprecision = 1.0 / (2.0 * gain2 * a);
  t.bad = n_bad(omega, m);
  t.sideband_back_action = m.gamma * n_ba(omega, m) / (4.0 * a) * sidebands_m;
  t.mean_field = m.kappa / (2.0 * m.alpha_max * m.alpha_max * a) *
                 (b00 * abs2_chi_c(omega, m.kappa) + b2m2 * sidebands_c);
  return t;
}

double n_add(double omega, const EffectiveModel& m) { return n_add_terms(omega, m).total(); }

double s_yout(double omega, const EffectiveModel& m) {
  return std::norm(gain(omega, m)) * response_a(omega, m) *
         (0.5 + m.n_th_b + n_add(omega, m));
}

double n_add0_approx(const EffectiveModel& m) {
  require_gain(m);
  const double nba0 = n_ba(0.0, m);
  const double k2 = m.kappa * m.kappa;
  return 1.0 / (16.0 * nba0) +
         0.125 * (k2 / (4.0 * m.omega_m * m.omega_m + 0.25 * k2)) * nba0;
}

double eta_opt(const EffectiveModel& m) {
  const double w2 = m.omega_m * m.omega_m;
  const double k2 = m.kappa * m.kappa;
  return std::sqrt(m.gamma * (w2 + 0.25 * k2) * std::sqrt(4.0 * w2 + 0.25 * k2) /
                   (2.0 * std::sqrt(2.0) * m.G * m.G));
}

double n_add_min0(double kappa, double omega_m) {
  return std::sqrt(2.0) / 4.0 * kappa / std::sqrt(kappa * kappa + 16.0 * omega_m * omega_m);
}

Diagnostics regime_diagnostics(const EffectiveModel& m) {
  Diagnostics d;
  auto check = [&](double ratio, const char* what) {
    if (ratio > 0.05) {
      std::ostringstream msg;
      msg << what << " = " << ratio << " > 0.05; resonant closed forms assume it is small";
      d.push_back({"RegimeWarning", msg.str()});
    }
  };
  check(m.gamma / m.omega_m, "gamma / omega_m");
  check(m.gamma / m.kappa, "gamma / kappa");
  return d;
}

NoiseBudget noise_budget(const EffectiveModel& m) {
  NoiseBudget b;
  b.n_bad_0 = n_bad(0.0, m);
  b.n_BA_0 = n_ba(0.0, m);
  b.n_add_0_exact = n_add(0.0, m);
  b.n_add_0_approx = n_add0_approx(m);
  b.n_add_min_0 = n_add_min0(m);
  b.eta_opt = eta_opt(m);
  b.eta_max = eta_from_alpha(m.alpha_max, m.kappa, m.omega_m);
  b.sql_beaten = b.n_add_0_exact < 0.5;
  b.diagnostics = regime_diagnostics(m);
  return b;
}

std::string_view to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::SQ: return "S_Q";
    case SpectrumKind::SP: return "S_P";
    case SpectrumKind::SYout: return "S_Yout";
    case SpectrumKind::NAdd: return "n_add";
    case SpectrumKind::NBad: return "n_bad";
    case SpectrumKind::NBA: return "n_BA";
    case SpectrumKind::A: return "A";
  }
  return "?";
}

SpectrumKind spectrum_kind_from_string(std::string_view s) {
  for (auto k : {SpectrumKind::SQ, SpectrumKind::SP, SpectrumKind::SYout, SpectrumKind::NAdd,
                 SpectrumKind::NBad, SpectrumKind::NBA, SpectrumKind::A}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown spectrum '" + std::string(s) +
                              "' (S_Q, S_P, S_Yout, n_add, n_bad, n_BA, A)");
}

double evaluate(SpectrumKind k, double omega, const EffectiveModel& m) {
  switch (k) {
    case SpectrumKind::SQ: return s_q(omega, m);
    case SpectrumKind::SP: return s_p(omega, m);
    case SpectrumKind::SYout: return s_yout(omega, m);
    case SpectrumKind::NAdd: return n_add(omega, m);
    case SpectrumKind::NBad: return n_bad(omega, m);
    case SpectrumKind::NBA: return n_ba(omega, m);
    case SpectrumKind::A: return response_a(omega, m);
  }
  return 0.0;
}

SpectrumSeries evaluate(SpectrumKind k, const std::vector<double>& grid,
                        const EffectiveModel& m) {
  SpectrumSeries s;
  s.label = std::string(to_string(k));
  s.omega = grid;
  s.values.reserve(grid.size());
  for (double w : grid) s.values.push_back(evaluate(k, w, m));
  return s;
}

std::vector<double> symmetric_grid(double half_width, int points, double omega_m) {
  if (points < 2 || !(half_width > 0.0)) {
    throw std::invalid_argument("symmetric_grid: need points >= 2 and half_width > 0");
  }
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(points) + 3);
  for (int i = 0; i < points; ++i) {
    g.push_back(-half_width + 2.0 * half_width * i / (points - 1));
  }
  for (double extra : {0.0, 2.0 * omega_m, -2.0 * omega_m}) {
    if (std::abs(extra) <= half_width) g.push_back(extra);
  }
  std::sort(g.begin(), g.end());
  const double tol = 1e-12 * half_width;
  g.erase(std::unique(g.begin(), g.end(), [tol](double a, double b) { return std::abs(a - b) <= tol; }),
          g.end());
  return g;
}

std::vector<double> default_grid(const EffectiveModel& m, int points) {
  return symmetric_grid(3.0 * m.omega_m * std::max(1.0, m.kappa / m.omega_m), points, m.omega_m);
}

namespace {

double integrate_even(SpectrumKind k, const EffectiveModel& m, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double w) { return evaluate(k, w, m); };

  std::vector<double> cuts{lo};
  for (double c : {0.5 * m.gamma, 5.0 * m.gamma, 50.0 * m.gamma, 0.5 * m.omega_m, m.omega_m,
                   2.0 * m.omega_m, 4.0 * m.omega_m, 0.5 * m.kappa, m.kappa, 4.0 * m.kappa,
                   20.0 * m.kappa}) {
    if (c > lo && c < hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-12);
  }
  total += gauss_kronrod<double, 61>::integrate(f, cuts.back(), hi, 15, 1e-12);
  return 2.0 * total / kTwoPi;
}

}  // namespace

double variance_from_spectrum(SpectrumKind k, const EffectiveModel& m) {
  return integrate_even(k, m, 0.0, std::numeric_limits<double>::infinity());
}

double band_power(SpectrumKind k, const EffectiveModel& m, double omega_lo, double omega_hi) {
  if (!(omega_hi > omega_lo) || omega_lo < 0.0) {
    throw std::invalid_argument("band_power: need 0 <= omega_lo < omega_hi");
  }
  return integrate_even(k, m, omega_lo, omega_hi);
}

nlohmann::json to_json(const NoiseBudget& b) {
  nlohmann::json j;
  j["n_bad_0"] = b.n_bad_0;
  j["n_BA_0"] = b.n_BA_0;
  j["n_add_0_exact"] = b.n_add_0_exact;
  j["n_add_0_approx"] = b.n_add_0_approx;
  j["n_add_min_0"] = b.n_add_min_0;
  j["eta_opt"] = b.eta_opt;
  j["eta_max"] = b.eta_max;
  j["sql_beaten"] = b.sql_beaten;
  auto diags = nlohmann::json::array();
  for (const auto& x : b.diagnostics) diags.push_back({{"code", x.code}, {"message", x.message}});
  j["diagnostics"] = diags;
  return j;
}

}  // namespace qndbec
