// Acceptance driver: one PASS/FAIL line per criterion.
//   qndbec_acceptance              runs all eight
//   qndbec_acceptance --criterion 6
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "qndbec/constants.hpp"
#include "qndbec/drive.hpp"
#include "qndbec/langevin.hpp"
#include "qndbec/params.hpp"
#include "qndbec/spectra.hpp"
#include "qndbec/spectral_estimate.hpp"
#include "qndbec/sweep.hpp"

using namespace qndbec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

PhysicalParams reference() {
  PhysicalParams p;
  p.N = 5e4;
  p.m_a = 86.909180527 * Constants::atomic_mass_unit;
  p.omega_c = 2.41494e15;
  p.omega_a = 2.41419e15;
  p.g0 = kTwoPi * 14.1e6;
  p.omega_R = kTwoPi * 3.77e3;
  p.kappa = kTwoPi * 13e6;
  p.gamma = 1e-3 * p.kappa;
  p.L = 178e-6;
  p.omega_sw = 0.0;
  p.eta_max = 0.655 * p.kappa;
  return p;
}

const double kOmegaR = kTwoPi * 3.77e3;
const double kSweeps[3] = {0.0, 3.0, 10.0};        // omega_sw / omega_R
const double kQuoted[3] = {0.655, 0.730, 0.789};   // eta_opt / kappa

EffectiveModel model_at(double omega_sw, double eta_over_kappa) {
  PhysicalParams p = with_omega_sw(reference(), omega_sw);
  p.eta_max = eta_over_kappa * p.kappa;
  return effective_model(p, derive_params(p));
}

// ------------------------------------------------------------------ C1

void c1(Outcome& o) {
  const PhysicalParams p = reference();
  for (int i = 0; i < 3; ++i) {
    const EtaOptimum e = optimize_eta(kSweeps[i] * kOmegaR, p);
    const double closed = e.eta_opt_closed / e.kappa;
    const double numeric = e.eta_opt_numeric / e.kappa;
    o.detail << " w_sw=" << kSweeps[i] << "wR closed=" << closed << " numeric=" << numeric
             << " quoted=" << kQuoted[i] << ";";
    o.check(std::abs(closed / kQuoted[i] - 1.0) < 0.01, "closed form off by >1%");
    o.check(std::abs(numeric / kQuoted[i] - 1.0) < 0.01, "numeric optimum off by >1%");
  }
}

// ------------------------------------------------------------------ C2

void c2(Outcome& o) {
  for (int i = 0; i < 3; ++i) {
    const double v = n_add(0.0, model_at(kSweeps[i] * kOmegaR, kQuoted[i]));
    o.detail << " n_add(0)=" << v << " at (" << kSweeps[i] << "wR, " << kQuoted[i] << "k);";
    o.check(v < 0.5, "not below the SQL");
  }
  double worst = 1e300;
  for (int k = 1; k <= 50; ++k) {
    const double eta = 0.001 * k;
    worst = std::min(worst, n_add(0.0, model_at(0.0, eta)));
  }
  o.detail << " min n_add(0) for eta<=0.05k: " << worst;
  o.check(worst > 0.5, "weak drive already beats the SQL");
}

// ------------------------------------------------------------------ C3

void c3(Outcome& o) {
  const double floor = n_add_min0(1e4, 1.0);
  o.detail << " n_add_min0(kappa=1e4 w_m)=" << floor << " target=" << std::sqrt(2.0) / 4.0 << ";";
  o.check(std::abs(floor - std::sqrt(2.0) / 4.0) <= 1e-3, "floor not reached");
  const PhysicalParams p = reference();
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double kappa = kTwoPi * 0.1e6 * std::pow(130.0, i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double w_sw = 20.0 * kOmegaR * j / 9.0;
      PhysicalParams q = with_omega_sw(p, w_sw);
      const double w_m = derive_params(q).omega_m;
      worst = std::max(worst, n_add_min0(kappa, w_m));
    }
  }
  o.detail << " max over 10x10 grid=" << worst;
  o.check(worst < 0.5, "grid point at or above 1/2");
}

// ------------------------------------------------------------------ C4

void c4(Outcome& o) {
  std::vector<double> ws;
  for (double s : kSweeps) ws.push_back(s * kOmegaR);
  const auto curves = nadd_frequency_curves(reference(), ws);
  for (const auto& c : curves) {
    const auto& v = c.series.values;
    const auto zero = std::find(c.series.omega.begin(), c.series.omega.end(), 0.0) -
                      c.series.omega.begin();
    const bool absolute = *std::min_element(v.begin(), v.end()) == v[zero];
    int pos = 0, neg = 0;
    for (double w : c.minima) {
      if (std::abs(w / (2.0 * c.omega_m) - 1.0) < 0.05) ++pos;
      if (std::abs(-w / (2.0 * c.omega_m) - 1.0) < 0.05) ++neg;
    }
    const EffectiveModel m = with_eta(model_at(c.omega_sw, 1.0), c.eta_max);
    const double side_p = n_add(2.0 * c.omega_m, m);
    const double side_m = n_add(-2.0 * c.omega_m, m);
    o.detail << " w_sw=" << c.omega_sw / kOmegaR << "wR min@0=" << (absolute ? "yes" : "no")
             << " sideband minima=" << pos << "+" << neg << " n_add(+-2w_m)=" << side_p << ";";
    o.check(absolute, "absolute minimum not at 0");
    o.check(pos == 1 && neg == 1, "sideband minima missing");
    o.check(side_p > 0.5 && side_m > 0.5, "sideband n_add below 1/2");
  }
}

// ------------------------------------------------------------------ C5

void c5(Outcome& o) {
  const SweepAxis ws{"omega_sw", "omega_R", 0.0, 20.0, 401, false, {}};
  const std::vector<double> kappas{kTwoPi * 13e6, kTwoPi * 1e6, kTwoPi * 0.1e6};
  const SweepResult r = nadd_min_curves(reference(), ws, kappas);
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    bool strict = true;
    for (std::size_t j = 1; j < 401; ++j) strict = strict && r.at(i, j) < r.at(i, j - 1);
    o.detail << " kappa=2pi*" << kappas[i] / kTwoPi / 1e6 << "MHz: " << r.at(i, 0) << " -> "
             << r.at(i, 400) << (strict ? " strictly decreasing;" : " NOT monotone;");
    o.check(strict, "curve not strictly decreasing");
  }
}

// ------------------------------------------------------------------ C6

EffectiveModel desk_model() {
  EffectiveModel m;
  m.omega_m = 1.0;
  m.kappa = 10.0;
  m.gamma = 1e-3;
  m.alpha_max = 1.0;
  m.G = std::sqrt(5.0 * m.kappa * m.gamma / 2.0);  // n_BA(0) = 5
  return m;
}

void c6(Outcome& o) {
  const EffectiveModel m = desk_model();
  NoiseConfig noise;
  noise.seed = 20261016;
  SimConfig sim;
  sim.dt = 0.02 / m.kappa;
  sim.t_settle = 10.0 / m.gamma;
  sim.t_record = 224.0 / m.gamma;
  sim.sample_interval = 0.05 / m.gamma;
  sim.n_traj = 64;
  sim.track_readout = false;
  WelchOptions welch;
  welch.segment_length = 64.0 / m.gamma;

  const auto ens = simulate(m, noise, sim);
  const auto sq = estimate_spectrum(ens, Observable::Q, welch);
  const auto sp = estimate_spectrum(ens, Observable::P, welch);

  // (a) peak and band
  const double sq0 = s_q(0.0, m);
  const double peak_err = sq.values[0] / sq0 - 1.0;
  double chi2 = 0.0;
  int dof = 0;
  for (std::size_t k = 0; k < sq.omega.size() && sq.omega[k] <= 5.0 * m.gamma; k += 2) {
    const double z = (sq.values[k] - s_q(sq.omega[k], m)) / sq.error[k];
    chi2 += z * z;
    ++dof;
  }
  const double limit = boost::math::quantile(boost::math::chi_squared(dof), 0.95);
  o.detail << " (a) S_Q(0) est=" << sq.values[0] << "+-" << sq.error[0] << " theory=" << sq0
           << " rel=" << peak_err << " chi2=" << chi2 << "/" << dof << " (95%: " << limit << ");";
  o.check(std::abs(peak_err) < 0.10, "S_Q peak off by >10%");
  o.check(chi2 < limit, "S_Q band test");

  // (b) back-action lands in P
  const double ratio = sp.values[0] / sq.values[0];
  const double predicted = s_p(0.0, m) / sq0;
  o.detail << " (b) S_P/S_Q est=" << ratio << " predicted=" << predicted << ";";
  o.check(std::abs(ratio / predicted - 1.0) < 0.15, "peak ratio off by >15%");

  // (c) same coupling, constant drive
  SimConfig con = sim;
  con.drive_mode = DriveMode::Constant;
  con.n_traj = 32;
  con.t_record = 160.0 / m.gamma;
  const auto ens_c = simulate(m, noise, con);
  const auto sqc = estimate_spectrum(ens_c, Observable::Q, welch);
  const double raise = sqc.values[0] / sq.values[0];
  const double raise_pred =
      (1.0 + 2.0 * n_q_constant_drive(0.0, m)) / (1.0 + 2.0 * n_bad(0.0, m));
  o.detail << " (c) constant/modulated S_Q(0) est=" << raise << "+-"
           << raise * std::hypot(sqc.error[0] / sqc.values[0], sq.error[0] / sq.values[0])
           << " predicted=" << raise_pred
           << " required>=10";
  o.check(raise >= 10.0, "constant drive raises S_Q(0) by less than 10x");
}

// ------------------------------------------------------------------ C7

void c7(Outcome& o) {
  EffectiveModel m = model_at(0.0, 0.655);
  m.alpha_max = 0.1;
  const MeanFieldResult r = integrate_meanfield(mean_field_problem(m));
  const double amp = std::abs(r.alpha_harmonic(1)) + std::abs(r.alpha_harmonic(-1));
  const double amp_err = amp / m.alpha_max - 1.0;
  const BetaComponents b = beta_fourier(m.G, m.alpha_max, m.omega_m, m.gamma);
  const std::pair<int, cplx> want[3] = {{0, b.beta_0}, {2, b.beta_2}, {-2, b.beta_m2}};
  o.detail << " amplitude rel=" << amp_err << ";";
  o.check(std::abs(amp_err) < 0.01, "alpha amplitude off by >1%");
  for (const auto& [n, z] : want) {
    const double e = std::abs(r.beta_harmonic(n) - z) / std::abs(z);
    o.detail << " beta_" << n << " rel=" << e << ";";
    o.check(e < 0.02, "beta harmonic off by >2%");
  }
}

// ------------------------------------------------------------------ C8

void c8(Outcome& o) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto draw = [&] { return std::pow(10.0, u(rng)); };

  double det_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Matrix2 b = bogoliubov_matrix(draw());
    det_worst = std::max(det_worst, std::abs(b[0][0] * b[1][1] - b[0][1] * b[1][0] - 1.0));
  }
  o.detail << " det-1 max=" << det_worst << ";";
  o.check(det_worst <= 1e-12, "Bogoliubov determinant");

  double odd_worst = 0.0;
  bool nonneg = true;
  for (int i = 0; i < 200; ++i) {
    EffectiveModel m;
    m.omega_m = 1.0;
    m.kappa = draw();
    m.gamma = 1e-2 * draw() * std::min(1.0, m.kappa);
    m.alpha_max = draw();
    m.G = draw() * std::sqrt(m.kappa * m.gamma) / m.alpha_max;
    m.n_th_b = 0.5 * (u(rng) + 2.0);
    const double w = 3.0 * draw();
    for (auto k : {SpectrumKind::SQ, SpectrumKind::SP, SpectrumKind::SYout, SpectrumKind::NAdd,
                   SpectrumKind::NBad, SpectrumKind::NBA}) {
      const double a = evaluate(k, w, m), c = evaluate(k, -w, m);
      odd_worst = std::max(odd_worst, std::abs(a - c) / std::max(std::abs(a), 1e-300));
      nonneg = nonneg && a >= 0.0 && c >= 0.0;
    }
  }
  o.detail << " evenness max rel=" << odd_worst << (nonneg ? " nonnegative;" : " NEGATIVE;");
  o.check(odd_worst <= 1e-12, "spectrum evenness");
  o.check(nonneg, "negative spectral value");

  double quad_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double G = draw(), a = draw(), wm = draw(), g = 1e-2 * draw();
    const BetaComponents b1 = beta_fourier(G, a, wm, g), b2 = beta_fourier(G, 2.0 * a, wm, g);
    for (auto [x, y] : {std::pair{b1.beta_0, b2.beta_0}, std::pair{b1.beta_2, b2.beta_2},
                        std::pair{b1.beta_m2, b2.beta_m2}}) {
      quad_worst = std::max(quad_worst, std::abs(y - 4.0 * x) / std::abs(4.0 * x));
    }
  }
  o.detail << " beta scaling max rel=" << quad_worst << ";";
  o.check(quad_worst <= 1e-12, "beta quadratic scaling");

  double id_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    EffectiveModel m;
    m.omega_m = draw();
    m.kappa = draw();
    m.gamma = 1e-3 * draw();
    m.alpha_max = draw();
    m.G = draw();
    const double ga2 = m.coupling() * m.coupling();
    const double bad = m.kappa / (4.0 * m.gamma) * ga2 /
                       (m.kappa * m.kappa / 4.0 + 4.0 * m.omega_m * m.omega_m);
    const double ba = 2.0 * ga2 / (m.kappa * m.gamma);
    const double ratio = 2.0 * (1.0 + 16.0 * m.omega_m * m.omega_m / (m.kappa * m.kappa));
    id_worst = std::max({id_worst, std::abs(n_bad(0.0, m) / bad - 1.0),
                         std::abs(n_ba(0.0, m) / ba - 1.0),
                         std::abs(n_ba(0.0, m) / n_bad(0.0, m) / ratio - 1.0)});
  }
  o.detail << " n_bad(0)/n_BA(0) identities max rel=" << id_worst;
  o.check(id_worst <= 1e-12, "closed-form identities");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "optimum drive", 1.0, c1},       {2, "SQL-beating region", 1.0, c2},
    {3, "bad-cavity floor", 1.0, c3},    {4, "n_add(omega) shape", 5.0, c4},
    {5, "n_add_min0 monotone", 1.0, c5}, {6, "Monte-Carlo vs analytic", 1200.0, c6},
    {7, "mean-field orbit", 10.0, c7},   {8, "property suites", 10.0, c8},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: qndbec_acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > 8) {
    std::cerr << "criterion must be 1..8\n";
    return 2;
  }

  std::cout.precision(6);
  bool all = true;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs <= c.budget_s, "over the runtime budget");
    std::cout << "C" << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name << " ("
              << secs << " s, budget " << c.budget_s << " s):" << o.detail.str() << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
