#include "qndbec/drive.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qndbec/constants.hpp"
#include "qndbec/errors.hpp"

namespace qndbec {

double DriveSpec::eta(double t) const { return eta_max * std::cos(omega_mod * t + phi); }

DriveSpec design_drive(double alpha_max, double kappa, double omega_m) {
  if (!(kappa > 0.0)) throw ValidationError("design_drive: kappa must be positive");
  if (!(omega_m >= 0.0)) throw ValidationError("design_drive: omega_m must be non-negative");
  if (!(alpha_max >= 0.0)) throw ValidationError("design_drive: alpha_max must be non-negative");
  DriveSpec d;
  d.alpha_max = alpha_max;
  d.omega_mod = omega_m;
  d.eta_max = eta_from_alpha(alpha_max, kappa, omega_m);
  d.phi = std::atan2(2.0 * omega_m, kappa);
  return d;
}

BetaComponents beta_fourier(double G, double alpha_max, double omega_m, double gamma) {
  const cplx i{0.0, 1.0};
  const double a2 = alpha_max * alpha_max;
  BetaComponents b;
  b.beta_0 = -i * G * a2 / (2.0 * (i * omega_m + 0.5 * gamma));
  b.beta_2 = -i * G * a2 / (4.0 * (3.0 * i * omega_m + 0.5 * gamma));
  b.beta_m2 = -i * G * a2 / (4.0 * (-i * omega_m + 0.5 * gamma));
  b.beta_bar_0 = b.beta_0 + std::conj(b.beta_0);
  b.beta_bar_2 = b.beta_2 + std::conj(b.beta_m2);
  b.beta_bar_m2 = b.beta_m2 + std::conj(b.beta_2);
  b.approx_0 = -G * a2 / (2.0 * omega_m);
  b.approx_2 = -G * a2 / (12.0 * omega_m);
  b.approx_m2 = G * a2 / (4.0 * omega_m);
  return b;
}

double compensating_detuning(double G, const BetaComponents& beta) {
  return G * beta.beta_bar_0.real();
}

MeanFieldProblem mean_field_problem(const EffectiveModel& m, double Delta_c) {
  MeanFieldProblem p;
  p.kappa = m.kappa;
  p.gamma = m.gamma;
  p.omega_m = m.omega_m;
  p.G = m.G;
  p.Delta_c = Delta_c;
  p.drive = design_drive(m.alpha_max, m.kappa, m.omega_m);
  return p;
}

namespace {

struct State {
  cplx alpha;
  cplx beta;
};

State operator+(const State& a, const State& b) { return {a.alpha + b.alpha, a.beta + b.beta}; }
State operator*(double s, const State& a) { return {s * a.alpha, s * a.beta}; }

class MeanFieldRhs {
 public:
  explicit MeanFieldRhs(const MeanFieldProblem& p) : p_(p) {}

  State operator()(double t, const State& y) const {
    const cplx i{0.0, 1.0};
    const double detuning = p_.Delta_c - p_.G * 2.0 * y.beta.real();
    State dy;
    dy.alpha = (i * detuning - 0.5 * p_.kappa) * y.alpha + p_.drive.eta(t);
    dy.beta = (-i * p_.omega_m - 0.5 * p_.gamma) * y.beta - i * p_.G * std::norm(y.alpha);
    return dy;
  }

 private:
  const MeanFieldProblem& p_;
};

State rk4_step(const MeanFieldRhs& f, double t, const State& y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
  const State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
  const State k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

MeanFieldResult integrate_meanfield(const MeanFieldProblem& problem,
                                    const MeanFieldOptions& options) {
  const double kappa = problem.kappa;
  const double omega_m = problem.omega_m;
  if (!(kappa > 0.0) || !(omega_m > 0.0) || !(problem.gamma > 0.0)) {
    throw ValidationError("integrate_meanfield: kappa, gamma and omega_m must be positive");
  }
  if (options.analysis_periods < 1) {
    throw ValidationError("integrate_meanfield: analysis_periods must be >= 1");
  }

  const double period = kTwoPi / omega_m;
  const double settle = 20.0 / problem.gamma;
  const double t_span = options.t_span > 0.0
                            ? options.t_span
                            : settle + options.analysis_periods * period;
  if (t_span < settle) {
    throw ValidationError("integrate_meanfield: t_span must be at least 20 / gamma");
  }
  const double dt_req = options.dt > 0.0 ? options.dt : 0.005 / kappa;
  const auto steps_per_period = static_cast<long>(std::ceil(period / dt_req));
  const double dt = period / static_cast<double>(steps_per_period);

  const auto n_periods = std::max<long>(static_cast<long>(std::ceil(t_span / period)),
                                        options.analysis_periods);
  const long total_steps = n_periods * steps_per_period;
  const long analysis_start = (n_periods - options.analysis_periods) * steps_per_period;
  const long sample_every =
      options.sample_every > 0 ? options.sample_every : std::max<long>(1, total_steps / 4000);

  MeanFieldRhs rhs(problem);
  MeanFieldResult out;
  out.dt = dt;
  out.alpha_harmonics.assign(7, cplx{});
  out.beta_harmonics.assign(7, cplx{});

  const double scale_floor = std::max(problem.drive.alpha_max, 1e-300);
  State y{cplx{}, cplx{}};
  double detuning_sum = 0.0;
  const cplx i{0.0, 1.0};

  for (long k = 0; k < total_steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    if (k >= analysis_start) {
      // Rectangle rule over whole periods is exact for the retained harmonics.
      for (int n = -3; n <= 3; ++n) {
        const cplx w = std::exp(-i * (static_cast<double>(n) * omega_m * t));
        out.alpha_harmonics[n + 3] += y.alpha * w;
        out.beta_harmonics[n + 3] += y.beta * w;
      }
      detuning_sum += problem.Delta_c - problem.G * 2.0 * y.beta.real();
    }
    if (k % sample_every == 0) {
      out.t.push_back(t);
      out.alpha.push_back(y.alpha);
      out.beta.push_back(y.beta);
    }

    if (k % 64 == 0) {
      const State full = rk4_step(rhs, t, y, dt);
      const State half = rk4_step(rhs, t + 0.5 * dt, rk4_step(rhs, t, y, 0.5 * dt), 0.5 * dt);
      const double scale = std::max({std::abs(half.alpha), std::abs(half.beta), scale_floor});
      const double err =
          std::max(std::abs(full.alpha - half.alpha), std::abs(full.beta - half.beta)) /
          (15.0 * scale);
      out.max_step_error = std::max(out.max_step_error, err);
      if (err > options.tolerance) {
        throw StiffnessError("integrate_meanfield: step-doubling error " + std::to_string(err) +
                             " exceeds tolerance; reduce dt (dt kappa = " +
                             std::to_string(dt * kappa) + ")");
      }
      y = half;
    } else {
      y = rk4_step(rhs, t, y, dt);
    }
    if (!std::isfinite(y.alpha.real()) || !std::isfinite(y.beta.real())) {
      throw StiffnessError("integrate_meanfield: solution became non-finite");
    }
  }

  const double n_window = static_cast<double>(total_steps - analysis_start);
  for (auto& h : out.alpha_harmonics) h /= n_window;
  for (auto& h : out.beta_harmonics) h /= n_window;
  out.mean_effective_detuning = detuning_sum / n_window;
  return out;
}

nlohmann::json to_json(const DriveSpec& d, double omega_p) {
  nlohmann::json j;
  j["alpha_max"] = d.alpha_max;
  j["eta_max"] = d.eta_max;
  j["phi"] = d.phi;
  j["omega_mod"] = d.omega_mod;
  j["modulation"] = "eta(t) = eta_max * cos(omega_mod * t + phi)";
  // eta_max cos(w t + phi) = (eta_max / 2) [e^{i(w t + phi)} + e^{-i(w t + phi)}]
  j["tones"] = {
      {{"detuning_from_carrier", d.omega_mod}, {"frequency", omega_p + d.omega_mod},
       {"amplitude", d.tone_amplitude()}, {"phase", d.phi}},
      {{"detuning_from_carrier", -d.omega_mod}, {"frequency", omega_p - d.omega_mod},
       {"amplitude", d.tone_amplitude()}, {"phase", -d.phi}},
  };
  return j;
}

nlohmann::json to_json(const BetaComponents& b) {
  auto c = [](cplx z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}}; };
  return {{"beta_0", c(b.beta_0)},         {"beta_2", c(b.beta_2)},
          {"beta_m2", c(b.beta_m2)},       {"beta_bar_0", c(b.beta_bar_0)},
          {"beta_bar_2", c(b.beta_bar_2)}, {"beta_bar_m2", c(b.beta_bar_m2)},
          {"approx_0", b.approx_0},        {"approx_2", b.approx_2},
          {"approx_m2", b.approx_m2}};
}

}  // namespace qndbec
