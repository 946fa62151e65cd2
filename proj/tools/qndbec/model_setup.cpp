#include "qndbec/model_setup.hpp"

#include <charconv>
#include <cmath>

namespace qndbec::cli {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      // physical inputs
      "N", "m_a", "omega_a", "omega_c", "omega_p", "g0", "L", "kappa", "gamma", "omega_sw",
      "a_s", "w", "omega_R", "alpha_max", "eta_max", "n_th_b", "n_th_a", "Delta_c",
      // effective-model shortcut
      "omega_m", "G", "n_ba0",
      // simulation
      "dt", "t_settle", "t_record", "n_traj", "seed", "drive_mode", "sample_interval",
      "track_readout", "segment_length"};
  return keys;
}

namespace {

template <typename T>
T parse_integer(const Config& cfg, const std::string& key, T fallback) {
  const auto v = cfg.get(key);
  if (!v) return fallback;
  T out{};
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw ConfigError(key, "invalid value for '" + key + "': expected an integer, got '" + *v + "'");
  }
  return out;
}

bool parse_bool(const Config& cfg, const std::string& key, bool fallback) {
  const auto v = cfg.get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError(key, "invalid value for '" + key + "': expected true or false, got '" + *v + "'");
}

ModelSetup load_effective(const Config& cfg) {
  using D = Dimension;
  ModelSetup s;
  UnitContext& ctx = s.ctx;
  s.model.kappa = cfg.quantity("kappa", D::AngularFrequency);
  ctx.kappa = s.model.kappa;
  s.model.gamma = cfg.quantity("gamma", D::AngularFrequency, ctx);
  ctx.gamma = s.model.gamma;
  s.model.omega_m = cfg.quantity("omega_m", D::AngularFrequency, ctx);
  ctx.omega_m = s.model.omega_m;
  auto positive = [](double v, const std::string& k) {
    if (!(v > 0.0)) throw ConfigError(k, "'" + k + "' must be positive");
  };
  positive(s.model.kappa, "kappa");
  positive(s.model.gamma, "gamma");
  positive(s.model.omega_m, "omega_m");
  s.model.alpha_max = cfg.optional_quantity("alpha_max", D::Dimensionless).value_or(1.0);
  if (auto target = cfg.optional_quantity("n_ba0", D::Dimensionless)) {
    if (cfg.has("G")) throw ConfigError("n_ba0", "give either 'G' or 'n_ba0', not both");
    if (*target < 0.0) throw ConfigError("n_ba0", "'n_ba0' must be >= 0");
    if (!(s.model.alpha_max > 0.0)) throw ConfigError("alpha_max", "'alpha_max' must be > 0 with n_ba0");
    // n_BA(0) = 2 (G alpha)^2 / (kappa gamma)
    s.model.G = std::sqrt(*target * s.model.kappa * s.model.gamma / 2.0) / s.model.alpha_max;
  } else {
    s.model.G = cfg.quantity("G", D::AngularFrequency, ctx);
  }
  s.model.n_th_b = cfg.optional_quantity("n_th_b", D::Dimensionless).value_or(0.0);
  s.n_th_a = cfg.optional_quantity("n_th_a", D::Dimensionless).value_or(0.0);
  if (s.model.n_th_b < 0.0) throw ConfigError("n_th_b", "'n_th_b' must be >= 0");
  if (s.n_th_a < 0.0) throw ConfigError("n_th_a", "'n_th_a' must be >= 0");
  return s;
}

}  // namespace

ModelSetup load_model(const Config& cfg) {
  if (cfg.has("omega_m")) return load_effective(cfg);
  ModelSetup s;
  s.physical = physical_params_from_config(cfg);
  s.derived = derive_params(*s.physical);
  s.model = effective_model(*s.physical, *s.derived);
  s.ctx = unit_context(*s.physical, *s.derived);
  s.n_th_a = s.physical->n_th_a;
  return s;
}

nlohmann::json ModelSetup::to_json() const {
  nlohmann::json j;
  j["model"] = qndbec::to_json(model);
  if (physical) j["physical"] = qndbec::to_json(*physical);
  if (derived) j["derived"] = qndbec::to_json(*derived);
  return j;
}

NoiseConfig noise_config(const Config& cfg, const ModelSetup& s) {
  NoiseConfig n;
  n.n_th_b = s.model.n_th_b;
  n.n_th_a = s.n_th_a;
  n.seed = parse_integer<std::uint64_t>(cfg, "seed", 1);
  return n;
}

SimConfig sim_config(const Config& cfg, const ModelSetup& s) {
  using D = Dimension;
  SimConfig sim;
  sim.dt = cfg.optional_quantity("dt", D::Time, s.ctx).value_or(0.0);
  sim.t_settle = cfg.optional_quantity("t_settle", D::Time, s.ctx).value_or(0.0);
  sim.t_record = cfg.optional_quantity("t_record", D::Time, s.ctx).value_or(0.0);
  sim.sample_interval = cfg.optional_quantity("sample_interval", D::Time, s.ctx).value_or(0.0);
  sim.n_traj = parse_integer<int>(cfg, "n_traj", sim.n_traj);
  sim.track_readout = parse_bool(cfg, "track_readout", sim.track_readout);
  if (auto mode = cfg.get("drive_mode")) {
    try {
      sim.drive_mode = drive_mode_from_string(*mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("drive_mode", std::string("invalid value for 'drive_mode': ") + e.what());
    }
  }
  return sim;
}

WelchOptions welch_options(const Config& cfg, const ModelSetup& s) {
  WelchOptions w;
  w.segment_length = cfg.optional_quantity("segment_length", Dimension::Time, s.ctx).value_or(0.0);
  return w;
}

}  // namespace qndbec::cli
