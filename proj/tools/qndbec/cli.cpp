#include "qndbec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qndbec/constants.hpp"
#include "qndbec/drive.hpp"
#include "qndbec/errors.hpp"
#include "qndbec/io.hpp"
#include "qndbec/langevin.hpp"
#include "qndbec/model_setup.hpp"
#include "qndbec/parallel.hpp"
#include "qndbec/spectra.hpp"
#include "qndbec/spectral_estimate.hpp"
#include "qndbec/sweep.hpp"
#include "qndbec/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace qndbec::cli {

namespace {

struct Run {
  std::string subcommand;
  Config cfg;
  ModelSetup setup;
  fs::path out_dir;
  std::vector<fs::path> outputs;
  json extra = json::object();
  std::vector<std::uint64_t> seeds;
  std::ostream* out = nullptr;

  bool physical() const { return setup.physical.has_value(); }
  std::string rate_unit() const { return physical() ? "rad/s" : "rate"; }
  std::string time_unit() const { return physical() ? "s" : "1/rate"; }

  fs::path output(const std::string& name) {
    fs::path p = out_dir / name;
    outputs.push_back(p);
    return p;
  }
};

void require_physical(const Run& r) {
  if (!r.physical()) {
    throw ValidationError("'" + r.subcommand +
                          "' needs the physical parameter set (omega_sw, omega_R, ...), "
                          "not an effective model with omega_m given directly");
  }
}

void print_summary(const Run& r, const EffectiveModel& m) {
  std::ostream& o = *r.out;
  o << std::setprecision(6);
  o << "omega_m      = " << m.omega_m << " " << r.rate_unit();
  if (r.setup.derived) o << "  (" << m.omega_m / r.setup.derived->omega_R << " omega_R)";
  o << "\nG            = " << m.G << " " << r.rate_unit() << "\n";
  o << "alpha_max    = " << m.alpha_max << "\n";
  o << "eta_max      = " << eta_from_alpha(m.alpha_max, m.kappa, m.omega_m) << " " << r.rate_unit()
    << "\n";
  if (m.G != 0.0) {
    const double e = eta_opt(m);
    o << "eta_opt      = " << e << " " << r.rate_unit() << "  (" << e / m.kappa << " kappa)\n";
  }
  o << "n_add_min    = " << n_add_min0(m) << "\n";
  if (r.setup.derived) {
    for (const auto& d : r.setup.derived->diagnostics) {
      o << "diagnostic   " << d.code << ": " << d.message << "\n";
    }
  }
}

json diagnostics_json(const Diagnostics& ds) {
  auto a = json::array();
  for (const auto& d : ds) a.push_back({{"code", d.code}, {"message", d.message}});
  return a;
}

// ---------------------------------------------------------------- derive

void cmd_derive(Run& r) {
  json j = r.setup.to_json();
  if (r.setup.derived) {
    const auto& d = *r.setup.derived;
    const auto depth =
        validate_lattice_depth(std::abs(d.U0), mean_photon_number(d.alpha_max), d.omega_R);
    j["lattice_depth"] = {{"pass", depth.pass}, {"ratio", depth.ratio}};
  }
  j["regime"] = diagnostics_json(regime_diagnostics(r.setup.model));
  write_json(r.output("derived.json"), j);
  print_summary(r, r.setup.model);
}

// ----------------------------------------------------------------- drive

json cplx_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void cmd_drive(Run& r, bool integrate, bool compensate) {
  const EffectiveModel& m = r.setup.model;
  const DriveSpec spec = design_drive(m.alpha_max, m.kappa, m.omega_m);
  const BetaComponents beta = beta_fourier(m.G, m.alpha_max, m.omega_m, m.gamma);
  const double omega_p = r.setup.physical ? r.setup.physical->omega_p.value_or(r.setup.physical->omega_c)
                                          : 0.0;
  const double base_detuning = r.setup.physical ? r.setup.physical->Delta_c : 0.0;
  const double delta_c = compensate ? base_detuning + compensating_detuning(m.G, beta) : base_detuning;

  json j;
  j["drive"] = to_json(spec, omega_p);
  j["beta"] = to_json(beta);
  j["compensating_detuning"] = compensating_detuning(m.G, beta);
  j["Delta_c_used"] = delta_c;

  if (integrate) {
    const MeanFieldResult res = integrate_meanfield(mean_field_problem(m, delta_c));
    std::vector<double> t, ar, ai, br, bi;
    for (std::size_t k = 0; k < res.t.size(); ++k) {
      t.push_back(res.t[k]);
      ar.push_back(res.alpha[k].real());
      ai.push_back(res.alpha[k].imag());
      br.push_back(res.beta[k].real());
      bi.push_back(res.beta[k].imag());
    }
    write_csv(r.output("meanfield.csv"),
              {"t[" + r.time_unit() + "]", "alpha_re", "alpha_im", "beta_re", "beta_im"},
              {t, ar, ai, br, bi});
    // alpha = alpha_max cos(w t) has harmonics alpha_max / 2 at +-1
    const double amp = std::abs(res.alpha_harmonic(1)) + std::abs(res.alpha_harmonic(-1));
    j["meanfield"] = {
        {"dt", res.dt},
        {"max_step_error", res.max_step_error},
        {"alpha_amplitude", amp},
        {"alpha_amplitude_rel_error", m.alpha_max > 0 ? amp / m.alpha_max - 1.0 : 0.0},
        {"beta_0", cplx_json(res.beta_harmonic(0))},
        {"beta_2", cplx_json(res.beta_harmonic(2))},
        {"beta_m2", cplx_json(res.beta_harmonic(-2))},
        {"mean_effective_detuning", res.mean_effective_detuning}};
  }
  write_json(r.output("drive.json"), j);

  std::ostream& o = *r.out;
  o << std::setprecision(6) << "eta_max      = " << spec.eta_max << " " << r.rate_unit() << "\n"
    << "phi          = " << spec.phi << " rad\n"
    << "beta_0       = " << beta.beta_0 << "\n";
  if (integrate) {
    o << "alpha amplitude rel. error = " << j["meanfield"]["alpha_amplitude_rel_error"].get<double>()
      << "\n";
  }
  print_summary(r, m);
}

// --------------------------------------------------------------- spectra

std::string spectrum_unit(SpectrumKind k, const std::string& rate) {
  switch (k) {
    case SpectrumKind::SQ:
    case SpectrumKind::SP:
    case SpectrumKind::A: return "[1/(" + rate + ")]";
    default: return "[quanta]";
  }
}

void cmd_spectra(Run& r, const std::vector<std::string>& kinds, int points, bool normalize) {
  const EffectiveModel& m = r.setup.model;
  const auto grid = default_grid(m, points);
  std::vector<std::string> header{normalize ? "omega/omega_m" : "omega[" + r.rate_unit() + "]"};
  std::vector<std::vector<double>> cols(1);
  for (double w : grid) cols[0].push_back(normalize ? w / m.omega_m : w);
  for (const auto& name : kinds) {
    const SpectrumKind k = spectrum_kind_from_string(name);
    header.push_back(std::string(to_string(k)) + spectrum_unit(k, r.rate_unit()));
    cols.push_back(evaluate(k, grid, m).values);
  }
  write_csv(r.output("spectra.csv"), header, cols);
  r.extra["regime"] = diagnostics_json(regime_diagnostics(m));
  print_summary(r, m);
}

// ---------------------------------------------------------- noise-budget

void cmd_noise_budget(Run& r) {
  const EffectiveModel& m = r.setup.model;
  const NoiseBudget b = noise_budget(m);
  const NAddTerms t = n_add_terms(0.0, m);
  json j = to_json(b);
  j["n_add_0_terms"] = {{"imprecision", t.imprecision},
                        {"bad", t.bad},
                        {"sideband_back_action", t.sideband_back_action},
                        {"mean_field", t.mean_field}};
  j["eta_opt_over_kappa"] = b.eta_opt / m.kappa;
  j["eta_max_over_kappa"] = b.eta_max / m.kappa;
  write_json(r.output("noise_budget.json"), j);
  print_summary(r, m);
  *r.out << "n_add(0)     = " << b.n_add_0_exact << " (resonant approx. " << b.n_add_0_approx
         << ")\nsql_beaten   = " << (b.sql_beaten ? "true" : "false") << "\n";
  for (const auto& d : b.diagnostics) *r.out << "diagnostic   " << d.code << ": " << d.message << "\n";
}

// -------------------------------------------------------------- simulate

double s_q_theory(double w, const EffectiveModel& m, DriveMode mode) {
  if (mode == DriveMode::Modulated) return s_q(w, m);
  return 0.5 * m.gamma * std::norm(chi_m(w, m.gamma)) *
         (1.0 + 2.0 * m.n_th_b + 2.0 * n_q_constant_drive(w, m));
}

void cmd_simulate(Run& r, bool save_trajectories) {
  const EffectiveModel& m = r.setup.model;
  const NoiseConfig noise = noise_config(r.cfg, r.setup);
  const SimConfig sim = resolve(sim_config(r.cfg, r.setup), m);
  const WelchOptions welch = welch_options(r.cfg, r.setup);
  r.seeds.push_back(noise.seed);

  const auto multipliers = floquet_multipliers(m, sim.drive_mode);
  bool stable = true;
  auto mj = json::array();
  for (const auto& mu : multipliers) {
    mj.push_back({{"re", mu.real()}, {"im", mu.imag()}, {"abs", std::abs(mu)}});
    stable = stable && std::abs(mu) < 1.0;
  }
  if (!stable) *r.out << "warning: drift has a Floquet multiplier on or outside the unit circle\n";

  const auto t0 = std::chrono::steady_clock::now();
  const TrajectoryEnsemble ens = simulate(m, noise, sim, default_workers());
  const double sim_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const SpectrumSeries sq = estimate_spectrum(ens, Observable::Q, welch);
  const SpectrumSeries sp = estimate_spectrum(ens, Observable::P, welch);
  std::vector<std::string> header{"omega[" + r.rate_unit() + "]"};
  std::vector<std::vector<double>> cols{sq.omega};
  const std::string du = "[1/(" + r.rate_unit() + ")]";
  std::vector<double> sq_th, sp_th;
  for (double w : sq.omega) {
    sq_th.push_back(s_q_theory(w, m, sim.drive_mode));
    sp_th.push_back(sim.drive_mode == DriveMode::Modulated ? s_p(w, m) : std::nan(""));
  }
  header.insert(header.end(), {"S_Q_est" + du, "S_Q_err" + du, "S_Q_theory" + du, "S_P_est" + du,
                               "S_P_err" + du, "S_P_theory" + du});
  cols.insert(cols.end(), {sq.values, sq.error, sq_th, sp.values, sp.error, sp_th});
  if (sim.track_readout) {
    const SpectrumSeries sy = estimate_spectrum(ens, Observable::Y_out, welch);
    std::vector<double> sy_th;
    for (double w : sy.omega) {
      sy_th.push_back(sim.drive_mode == DriveMode::Modulated ? s_yout(w, m) : std::nan(""));
    }
    header.insert(header.end(), {"S_Yout_est[quanta]", "S_Yout_err[quanta]", "S_Yout_theory[quanta]"});
    cols.insert(cols.end(), {sy.values, sy.error, sy_th});
  }
  write_csv(r.output("spectra_sim.csv"), header, cols);

  if (save_trajectories) {
    std::vector<double> idx, t, x, y, q, p, yin;
    for (std::size_t i = 0; i < ens.trajectories.size(); ++i) {
      const auto& tr = ens.trajectories[i];
      for (std::size_t k = 0; k < ens.n_samples; ++k) {
        idx.push_back(static_cast<double>(i));
        t.push_back((static_cast<double>(k) + 0.5) * ens.sample_interval);
        x.push_back(tr.X[k]);
        q.push_back(tr.Q[k]);
        p.push_back(tr.P[k]);
        y.push_back(tr.Y.empty() ? std::nan("") : tr.Y[k]);
        yin.push_back(tr.Y_in.empty() ? std::nan("") : tr.Y_in[k]);
      }
    }
    write_csv(r.output("trajectories.csv"),
              {"trajectory", "t[" + r.time_unit() + "]", "X", "Y", "Q", "P", "Y_in"},
              {idx, t, x, y, q, p, yin});
  }

  const auto vq = estimate_variance(ens, Observable::Q);
  const auto vp = estimate_variance(ens, Observable::P);
  json report;
  report["params_hash"] = ens.params_hash;
  report["sim"] = to_json(ens.sim);
  report["noise"] = to_json(noise);
  report["sample_interval"] = ens.sample_interval;
  report["n_samples"] = ens.n_samples;
  report["floquet_multipliers"] = mj;
  report["drift_stable"] = stable;
  report["simulation_seconds"] = sim_seconds;
  report["S_Q_peak"] = {{"estimate", sq.values[0]}, {"error", sq.error[0]}, {"theory", sq_th[0]}};
  report["S_P_peak"] = {{"estimate", sp.values[0]}, {"error", sp.error[0]}, {"theory", sp_th[0]}};
  report["var_Q"] = {{"estimate", vq.value}, {"error", vq.error}};
  report["var_P"] = {{"estimate", vp.value}, {"error", vp.error}};
  if (sim.drive_mode == DriveMode::Modulated) {
    report["var_Q"]["theory"] = variance_from_spectrum(SpectrumKind::SQ, m);
    report["var_P"]["theory"] = variance_from_spectrum(SpectrumKind::SP, m);
    report["n_BA_0"] = n_ba(0.0, m);
    report["n_bad_0"] = n_bad(0.0, m);
  }
  report["commutator"] = {{"dc", commutator_spectrum(sim.drive_mode, m.alpha_max).dc},
                          {"at_omega_m", commutator_spectrum(sim.drive_mode, m.alpha_max).at_omega_m},
                          {"at_2omega_m", commutator_spectrum(sim.drive_mode, m.alpha_max).at_2omega_m}};
  write_json(r.output("sim_report.json"), report);

  std::ostream& o = *r.out;
  o << std::setprecision(6) << "trajectories = " << sim.n_traj << " x " << ens.n_samples
    << " samples (" << sim_seconds << " s)\n"
    << "S_Q(0)       = " << sq.values[0] << " +- " << sq.error[0] << "  theory " << sq_th[0] << "\n"
    << "S_P(0)       = " << sp.values[0] << " +- " << sp.error[0] << "  theory " << sp_th[0] << "\n"
    << "Var(Q)       = " << vq.value << " +- " << vq.error << "\n"
    << "Var(P)       = " << vp.value << " +- " << vp.error << "\n";
  print_summary(r, m);
}

// ----------------------------------------------------- sweep / optimize

SweepAxis parse_axis(const std::string& text) {
  // name:unit:start:stop:count[:log]
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 5 && parts.size() != 6) {
    throw ConfigError("axis", "invalid --axis '" + text + "': expected name:unit:start:stop:count[:log]");
  }
  SweepAxis a;
  a.name = parts[0];
  a.unit = parts[1];
  try {
    a.start = std::stod(parts[2]);
    a.stop = std::stod(parts[3]);
    a.count = std::stoi(parts[4]);
  } catch (const std::exception&) {
    throw ConfigError("axis", "invalid --axis '" + text + "': start, stop and count must be numbers");
  }
  if (parts.size() == 6) {
    if (parts[5] != "log") throw ConfigError("axis", "invalid --axis '" + text + "': last field must be 'log'");
    a.log = true;
  }
  try {
    a.validate();
  } catch (const ValidationError& e) {
    throw ConfigError("axis", std::string("invalid --axis: ") + e.what());
  }
  return a;
}

SweepAxis fig2_omega_axis() { return {"omega_sw", "omega_R", 0.0, 15.0, 151, false, {}}; }
SweepAxis fig2_eta_axis() { return {"eta_max", "kappa", 0.01, 2.0, 151, false, {}}; }

void write_sweep(Run& r, const SweepResult& res, const std::string& stem) {
  const auto& d = *r.setup.derived;
  const double kappa = r.setup.physical->kappa;
  const auto wv = res.axes[0].values_in_unit();
  const auto ev = res.axes[1].values_in_unit();
  auto scale = [&](const SweepAxis& a) {
    return a.unit == "omega_R" ? d.omega_R : a.unit == "kappa" ? kappa : 1.0;
  };
  std::vector<double> w_rad, w_r, e_rad, e_k, v, mask;
  for (std::size_t i = 0; i < wv.size(); ++i) {
    for (std::size_t j = 0; j < ev.size(); ++j) {
      const double w = wv[i] * scale(res.axes[0]);
      const double e = ev[j] * scale(res.axes[1]);
      w_rad.push_back(w);
      w_r.push_back(w / d.omega_R);
      e_rad.push_back(e);
      e_k.push_back(e / kappa);
      v.push_back(res.at(i, j));
      mask.push_back(res.mask[i * ev.size() + j] ? 1.0 : 0.0);
    }
  }
  write_csv(r.output(stem + ".csv"),
            {"omega_sw[rad/s]", "omega_sw[omega_R]", "eta_max[rad/s]", "eta_max[kappa]",
             "n_add0[quanta]", "sql_beaten"},
            {w_rad, w_r, e_rad, e_k, v, mask});
  json man = manifest_json(res);
  man["files"] = {stem + ".csv"};
  write_json(r.output(stem + ".json"), man);
}

void cmd_sweep(Run& r, const std::vector<std::string>& axes, const std::string& observable) {
  require_physical(r);
  if (observable != "nadd0") {
    throw ConfigError("observable", "unsupported --observable '" + observable + "' (only nadd0)");
  }
  SweepAxis a = fig2_omega_axis(), b = fig2_eta_axis();
  if (!axes.empty()) {
    if (axes.size() != 2) throw ConfigError("axis", "sweep needs exactly two --axis values");
    a = parse_axis(axes[0]);
    b = parse_axis(axes[1]);
    if (a.name != "omega_sw" || b.name != "eta_max") {
      throw ConfigError("axis", "nadd0 sweeps take an omega_sw axis followed by an eta_max axis");
    }
  }
  const SweepResult res = sweep_nadd0(*r.setup.physical, a, b, default_workers());
  write_sweep(r, res, "sweep_nadd0");
  const auto beaten = std::count(res.mask.begin(), res.mask.end(), true);
  *r.out << "grid         = " << a.count << " x " << b.count << "\nsql_beaten   = " << beaten
         << " of " << res.mask.size() << " points\n";
  print_summary(r, r.setup.model);
}

void cmd_optimize(Run& r) {
  require_physical(r);
  const double w_sw = r.setup.derived->omega_sw;
  const EtaOptimum o = optimize_eta(w_sw, *r.setup.physical);
  json j = to_json(o);
  j["omega_sw_over_omega_R"] = w_sw / r.setup.derived->omega_R;
  j["relative_difference"] = (o.eta_opt_numeric - o.eta_opt_closed) / o.eta_opt_closed;
  write_json(r.output("optimize.json"), j);
  *r.out << std::setprecision(6) << "eta_opt      = " << o.eta_opt_numeric / o.kappa
         << " kappa (numeric), " << o.eta_opt_closed / o.kappa << " kappa (closed form)\n"
         << "n_add_min    = " << o.nadd_min_numeric << " (numeric), " << o.nadd_min_closed
         << " (closed form)\n";
  print_summary(r, r.setup.model);
}

// ---------------------------------------------------------------- figure

void write_plot_script(Run& r, const std::string& fig) {
  std::ostringstream s;
  s << "# gnuplot script; run from the output directory: gnuplot " << fig << ".gp\n"
    << "set datafile separator ','\nset key autotitle columnhead\n"
    << "set terminal pngcairo size 900,650\nset output '" << fig << ".png'\n";
  if (fig == "fig2") {
    s << "set xlabel 'omega_sw / omega_R'\nset ylabel 'eta_max / kappa'\nset view map\n"
      << "set dgrid3d 151,151\nsplot 'fig2_nadd0.csv' using 2:4:5 with pm3d notitle\n";
  } else if (fig == "fig3") {
    s << "set xlabel 'eta_max / kappa'\nset ylabel 'n_add(0)'\nset logscale x\n"
      << "plot for [i=2:4] 'fig3_nadd0_vs_eta.csv' using 1:i with lines\n";
  } else if (fig == "fig4") {
    s << "set xlabel 'omega_sw / omega_R'\nset ylabel 'n_add,min(0)'\n"
      << "plot for [i=2:4] 'fig4_nadd_min.csv' using 1:i with lines\n";
  } else {
    s << "set xlabel 'omega / omega_m'\nset ylabel 'n_add(omega)'\n"
      << "plot for [i=2:4] 'fig5_nadd_omega.csv' using 1:i with lines\n";
  }
  std::ofstream(r.output(fig + ".gp"), std::ios::binary) << s.str();
}

const std::vector<double> kFigOmegaSw{0.0, 3.0, 10.0};  // in omega_R

void cmd_figure(Run& r, const std::string& fig, bool plot_script) {
  require_physical(r);
  const PhysicalParams& base = *r.setup.physical;
  const double wr = r.setup.derived->omega_R;
  json man;
  man["figure"] = fig;

  if (fig == "fig2") {
    const SweepResult res = sweep_nadd0(base, fig2_omega_axis(), fig2_eta_axis(), default_workers());
    write_sweep(r, res, "fig2_nadd0");
    man["note"] = "axis ranges are a default choice; the source figure does not state them";
  } else if (fig == "fig3") {
    std::vector<std::vector<double>> cols(1);
    std::vector<std::string> header{"eta_max[kappa]"};
    const int n = 400;
    for (int i = 0; i < n; ++i) cols[0].push_back(0.01 * std::pow(200.0, i / double(n - 1)));
    auto optima = json::array();
    for (double w : kFigOmegaSw) {
      const PhysicalParams p = with_omega_sw(base, w * wr);
      const EffectiveModel m = effective_model(p, derive_params(p));
      std::vector<double> v;
      for (double e : cols[0]) v.push_back(n_add(0.0, with_eta(m, e * m.kappa)));
      std::ostringstream h;
      h << "n_add0@omega_sw=" << w << "omega_R[quanta]";
      header.push_back(h.str());
      cols.push_back(v);
      json o = to_json(optimize_eta(w * wr, base));
      o["omega_sw_over_omega_R"] = w;
      optima.push_back(o);
    }
    write_csv(r.output("fig3_nadd0_vs_eta.csv"), header, cols);
    man["optima"] = optima;
  } else if (fig == "fig4") {
    SweepAxis axis{"omega_sw", "omega_R", 0.0, 20.0, 201, false, {}};
    const std::vector<double> kappas{kTwoPi * 13e6, kTwoPi * 1e6, kTwoPi * 0.1e6};
    const SweepResult res = nadd_min_curves(base, axis, kappas);
    std::vector<std::vector<double>> cols{axis.values_in_unit()};
    std::vector<std::string> header{"omega_sw[omega_R]"};
    for (std::size_t k = 0; k < kappas.size(); ++k) {
      std::ostringstream h;
      h << "n_add_min0@kappa=2pi*" << kappas[k] / kTwoPi / 1e6 << "MHz[quanta]";
      header.push_back(h.str());
      std::vector<double> v;
      for (int i = 0; i < axis.count; ++i) v.push_back(res.at(k, static_cast<std::size_t>(i)));
      cols.push_back(v);
    }
    write_csv(r.output("fig4_nadd_min.csv"), header, cols);
    man["sweep"] = manifest_json(res);
  } else if (fig == "fig5") {
    std::vector<double> ws;
    for (double w : kFigOmegaSw) ws.push_back(w * wr);
    const auto curves = nadd_frequency_curves(base, ws);
    std::vector<std::vector<double>> cols;
    std::vector<std::string> header{"omega/omega_m"};
    auto info = json::array();
    for (const auto& c : curves) {
      if (cols.empty()) {
        cols.emplace_back();
        for (double w : c.series.omega) cols[0].push_back(w / c.omega_m);
      }
      std::ostringstream h;
      h << "n_add@omega_sw=" << c.omega_sw / wr << "omega_R[quanta]";
      header.push_back(h.str());
      cols.push_back(c.series.values);
      auto minima = json::array();
      for (double w : c.minima) minima.push_back(w / c.omega_m);
      info.push_back({{"omega_sw_over_omega_R", c.omega_sw / wr},
                      {"eta_max_over_kappa", c.eta_max / base.kappa},
                      {"omega_m", c.omega_m},
                      {"minima_over_omega_m", minima},
                      {"global_minimum_over_omega_m", c.global_minimum_at / c.omega_m}});
    }
    write_csv(r.output("fig5_nadd_omega.csv"), header, cols);
    man["curves"] = info;
  } else {
    throw ConfigError("figure", "unknown figure '" + fig + "' (fig2, fig3, fig4, fig5)");
  }
  write_json(r.output(fig + ".json"), man);
  if (plot_script) write_plot_script(r, fig);
  *r.out << "wrote " << fig << " data to " << r.out_dir.string() << "\n";
  print_summary(r, r.setup.model);
}

void write_manifest(Run& r, const std::vector<std::string>& args, const fs::path& config_path,
                    double wall) {
  json m;
  m["tool"] = "qndbec";
  m["version"] = kVersion;
  m["subcommand"] = r.subcommand;
  m["arguments"] = args;
  m["config_file"] = config_path.string();
  m["config"] = r.cfg.entries();
  m["params"] = r.setup.to_json();
  auto outs = json::array();
  for (const auto& p : r.outputs) {
    outs.push_back({{"file", p.filename().string()},
                    {"sha256", sha256_file(p)},
                    {"bytes", fs::file_size(p)}});
  }
  m["outputs"] = outs;
  m["seeds"] = r.seeds;
  m["workers"] = default_workers();
  m["wall_time_s"] = wall;
  m["timestamp"] = utc_timestamp();
  if (!r.extra.empty()) m["details"] = r.extra;
  write_json(r.out_dir / "run_manifest.json", m);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Back-action-evading measurement toolkit for a cavity BEC Bogoliubov mode"};
  app.name("qndbec");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_path;
  std::string out_dir = "qndbec-out";
  std::map<std::string, std::string> overrides;
  app.add_option("--config", config_path, "flat key = value configuration file")->required();
  app.add_option("--out", out_dir, "output directory (created if missing)");
  for (const auto& key : known_keys()) {
    app.add_option("--" + flag_name(key), overrides[key], "overrides config key '" + key + "'");
  }

  auto* derive = app.add_subcommand("derive", "derived optomechanical parameters");
  auto* drive = app.add_subcommand("drive", "two-tone drive design and mean-field check");
  bool integrate = false, compensate = false;
  drive->add_flag("--integrate", integrate, "integrate the mean-field equations");
  drive->add_flag("--compensate-detuning", compensate, "cancel the static detuning shift G beta_bar_0");

  auto* spectra = app.add_subcommand("spectra", "analytic spectra on the default grid");
  std::vector<std::string> kinds{"S_Q", "S_P", "S_Yout", "n_add", "n_bad", "n_BA", "A"};
  int points = 4001;
  bool normalize = false;
  spectra->add_option("--kinds", kinds, "spectra to evaluate")->delimiter(',');
  spectra->add_option("--points", points, "grid points")->check(CLI::Range(2, 10000000));
  spectra->add_flag("--normalize", normalize, "frequency axis in units of omega_m");

  auto* budget = app.add_subcommand("noise-budget", "added noise at resonance and the SQL verdict");
  auto* sim = app.add_subcommand("simulate", "stochastic simulation and spectral estimate");
  bool save_traj = false;
  sim->add_flag("--save-trajectories", save_traj, "write every trajectory as CSV");

  auto* sweep = app.add_subcommand("sweep", "n_add(0) over omega_sw x eta_max");
  std::vector<std::string> axes;
  std::string observable = "nadd0";
  sweep->add_option("--axis", axes, "name:unit:start:stop:count[:log], given twice");
  sweep->add_option("--observable", observable, "swept quantity (nadd0)");

  auto* optimize = app.add_subcommand("optimize", "optimum pump amplitude at the configured omega_sw");
  auto* figure = app.add_subcommand("figure", "data for the reference figures");
  std::string fig;
  bool plot_script = false;
  figure->add_option("which", fig, "fig2 | fig3 | fig4 | fig5")->required();
  figure->add_flag("--plot-script", plot_script, "also write a gnuplot script");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Run r;
  r.out = &out;
  r.subcommand = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    r.cfg = Config::load(config_path);
    // A flag replaces the file's alternative spelling of the same quantity.
    const std::multimap<std::string, std::string> alternatives{
        {"alpha_max", "eta_max"}, {"eta_max", "alpha_max"}, {"omega_sw", "a_s"},
        {"omega_sw", "w"},        {"G", "n_ba0"},           {"n_ba0", "G"}};
    for (const auto& [key, value] : overrides) {
      if (value.empty()) continue;
      auto [lo, hi] = alternatives.equal_range(key);
      for (auto it = lo; it != hi; ++it) {
        if (overrides[it->second].empty()) r.cfg.erase(it->second);
      }
      r.cfg.set(key, value);
    }
    r.setup = load_model(r.cfg);
    r.out_dir = out_dir;
    fs::create_directories(r.out_dir);

    if (derive->parsed()) cmd_derive(r);
    else if (drive->parsed()) cmd_drive(r, integrate, compensate);
    else if (spectra->parsed()) cmd_spectra(r, kinds, points, normalize);
    else if (budget->parsed()) cmd_noise_budget(r);
    else if (sim->parsed()) cmd_simulate(r, save_traj);
    else if (sweep->parsed()) cmd_sweep(r, axes, observable);
    else if (optimize->parsed()) cmd_optimize(r);
    else if (figure->parsed()) cmd_figure(r, fig, plot_script);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(r, args, config_path, wall);
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qndbec::cli
