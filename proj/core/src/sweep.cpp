#include "qndbec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qndbec/golden.hpp"
#include "qndbec/io.hpp"
#include "qndbec/parallel.hpp"

namespace qndbec {

void SweepAxis::validate() const {
  if (!explicit_values.empty()) {
    if (static_cast<int>(explicit_values.size()) != count) {
      throw ValidationError("axis '" + name + "': count does not match its explicit values");
    }
    return;
  }
  if (count < 2) throw ValidationError("axis '" + name + "': count must be >= 2");
  if (!(start < stop)) throw ValidationError("axis '" + name + "': start must be < stop");
  if (log && !(start > 0.0)) throw ValidationError("axis '" + name + "': log axis needs start > 0");
  if (unit != "omega_R" && unit != "kappa" && unit != "rad/s") {
    throw ValidationError("axis '" + name + "': unit must be omega_R, kappa or rad/s");
  }
}

std::vector<double> SweepAxis::values_in_unit() const {
  validate();
  if (!explicit_values.empty()) return explicit_values;
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    v[i] = log ? start * std::pow(stop / start, f) : start + f * (stop - start);
  }
  v.back() = stop;
  return v;
}

namespace {

double unit_scale(const SweepAxis& a, const PhysicalParams& base, const DerivedParams& d) {
  if (a.unit == "omega_R") return d.omega_R;
  if (a.unit == "kappa") return base.kappa;
  return 1.0;
}

std::vector<double> axis_values(const SweepAxis& a, const PhysicalParams& base,
                                const DerivedParams& d) {
  auto v = a.values_in_unit();
  const double s = unit_scale(a, base, d);
  for (double& x : v) x *= s;
  return v;
}

EffectiveModel model_at(const PhysicalParams& base, double omega_sw) {
  const PhysicalParams p = with_omega_sw(base, omega_sw);
  return effective_model(p, derive_params(p));
}

nlohmann::json base_hash_input(const PhysicalParams& base) { return to_json(base); }

}  // namespace

PhysicalParams with_omega_sw(PhysicalParams p, double omega_sw) {
  p.omega_sw = omega_sw;
  p.a_s.reset();
  p.w.reset();
  return p;
}

SweepResult sweep_nadd0(const PhysicalParams& base, const SweepAxis& omega_sw,
                        const SweepAxis& eta_max, unsigned workers) {
  omega_sw.validate();
  eta_max.validate();
  const DerivedParams d0 = derive_params(base);
  const auto ws = axis_values(omega_sw, base, d0);
  const auto es = axis_values(eta_max, base, d0);

  SweepResult r;
  r.observable = "n_add(0)";
  r.axes = {omega_sw, eta_max};
  r.values.assign(ws.size() * es.size(), 0.0);
  parallel_for(
      ws.size(),
      [&](std::size_t i) {
        const EffectiveModel m = model_at(base, ws[i]);
        for (std::size_t j = 0; j < es.size(); ++j) {
          r.values[i * es.size() + j] = n_add(0.0, with_eta(m, es[j]));
        }
      },
      workers);
  r.mask.resize(r.values.size());
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    if (!std::isfinite(r.values[k])) throw NumericalError("non-finite n_add(0) in sweep");
    r.mask[k] = r.values[k] < 0.5;
  }
  r.params_hash = params_hash(base_hash_input(base));
  r.timestamp = utc_timestamp();
  return r;
}

EtaOptimum optimize_eta(double omega_sw, const PhysicalParams& base) {
  const EffectiveModel m = model_at(base, omega_sw);
  auto f = [&](double eta) { return n_add(0.0, with_eta(m, eta)); };
  const auto res = golden_section_minimize(f, 1e-3 * m.kappa, 10.0 * m.kappa, 1e-6);

  EtaOptimum o;
  o.omega_sw = omega_sw;
  o.kappa = m.kappa;
  o.eta_opt_numeric = res.x;
  o.nadd_min_numeric = res.value;
  o.eta_opt_closed = eta_opt(m);
  o.nadd_min_closed = n_add_min0(m);
  o.iterations = res.iterations;
  return o;
}

SweepResult nadd_min_curves(const PhysicalParams& base, const SweepAxis& omega_sw,
                            const std::vector<double>& kappas) {
  omega_sw.validate();
  if (kappas.empty()) throw ValidationError("nadd_min_curves needs at least one kappa");
  const DerivedParams d0 = derive_params(base);
  const auto ws = axis_values(omega_sw, base, d0);

  SweepAxis kaxis;
  kaxis.name = "kappa";
  kaxis.unit = "rad/s";
  kaxis.count = static_cast<int>(kappas.size());
  kaxis.start = kappas.front();
  kaxis.stop = kappas.back();
  kaxis.explicit_values = kappas;

  SweepResult r;
  r.observable = "n_add_min(0)";
  r.axes = {kaxis, omega_sw};
  r.values.reserve(kappas.size() * ws.size());
  for (double k : kappas) {
    for (double w : ws) r.values.push_back(n_add_min0(k, model_at(base, w).omega_m));
  }
  r.params_hash = params_hash(base_hash_input(base));
  r.timestamp = utc_timestamp();
  return r;
}

std::vector<FrequencyCurve> nadd_frequency_curves(const PhysicalParams& base,
                                                  const std::vector<double>& omega_sw_values,
                                                  int points) {
  std::vector<FrequencyCurve> out;
  for (double w_sw : omega_sw_values) {
    const EffectiveModel m0 = model_at(base, w_sw);
    FrequencyCurve c;
    c.omega_sw = w_sw;
    c.omega_m = m0.omega_m;
    c.eta_max = eta_opt(m0);
    const EffectiveModel m = with_eta(m0, c.eta_max);
    c.series = evaluate(SpectrumKind::NAdd, symmetric_grid(3.0 * m.omega_m, points, m.omega_m), m);

    const auto& x = c.series.omega;
    const auto& v = c.series.values;
    double best = std::numeric_limits<double>::infinity();
    auto f = [&](double w) { return n_add(w, m); };
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (!(v[i] < v[i - 1] && v[i] <= v[i + 1])) continue;
      double at = x[i];
      double val = v[i];
      try {
        const auto res = golden_section_minimize(f, x[i - 1], x[i + 1], 1e-10);
        if (res.value <= val) {
          at = res.x;
          val = res.value;
        }
      } catch (const NoMinimumInBracket&) {
        // keep the grid point
      }
      c.minima.push_back(at);
      if (val < best) {
        best = val;
        c.global_minimum_at = at;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json to_json(const SweepAxis& a) {
  nlohmann::json j{{"name", a.name}, {"unit", a.unit}, {"start", a.start},
                   {"stop", a.stop}, {"count", a.count}, {"log", a.log}};
  if (!a.explicit_values.empty()) j["values"] = a.explicit_values;
  return j;
}

nlohmann::json manifest_json(const SweepResult& r) {
  auto axes = nlohmann::json::array();
  for (const auto& a : r.axes) axes.push_back(to_json(a));
  return {{"observable", r.observable},
          {"axes", axes},
          {"layout", "row-major, first axis slowest"},
          {"params_hash", r.params_hash},
          {"timestamp", r.timestamp}};
}

nlohmann::json to_json(const EtaOptimum& o) {
  return {{"omega_sw", o.omega_sw},
          {"kappa", o.kappa},
          {"eta_opt_numeric", o.eta_opt_numeric},
          {"eta_opt_numeric_over_kappa", o.eta_opt_numeric / o.kappa},
          {"nadd_min_numeric", o.nadd_min_numeric},
          {"eta_opt_closed", o.eta_opt_closed},
          {"eta_opt_closed_over_kappa", o.eta_opt_closed / o.kappa},
          {"nadd_min_closed", o.nadd_min_closed},
          {"iterations", o.iterations}};
}

}  // namespace qndbec
