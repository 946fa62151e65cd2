#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qndbec/config.hpp"
#include "qndbec/langevin.hpp"
#include "qndbec/params.hpp"
#include "qndbec/spectral_estimate.hpp"

namespace qndbec::cli {

/// Every key the tool understands. Flags mirror these one to one.
const std::vector<std::string>& known_keys();

/// A config resolves either to physical inputs (derived through the full
/// parameter chain) or, when it sets omega_m directly, to an effective model
/// in arbitrary rate units.
struct ModelSetup {
  std::optional<PhysicalParams> physical;
  std::optional<DerivedParams> derived;
  EffectiveModel model;
  UnitContext ctx;
  double n_th_a = 0.0;

  nlohmann::json to_json() const;
};

ModelSetup load_model(const Config& cfg);

NoiseConfig noise_config(const Config& cfg, const ModelSetup& s);
SimConfig sim_config(const Config& cfg, const ModelSetup& s);
WelchOptions welch_options(const Config& cfg, const ModelSetup& s);

}  // namespace qndbec::cli
