#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qndbec {

enum class Dimension { Dimensionless, AngularFrequency, Time, Length, Mass };

std::string_view to_string(Dimension d);

/// Reference scales that relative units ("3 omega_R", "0.655kappa",
/// "200/gamma") resolve against. Unset entries make such units an error.
struct UnitContext {
  std::optional<double> omega_R;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::optional<double> omega_m;
};

/// Names of the reference scale a quantity string depends on, if any
/// ("omega_R", "kappa", "gamma", "omega_m").
std::optional<std::string> unit_reference(std::string_view text);

/// Parses "<number> [unit]" into SI (rad/s, s, m, kg).
///
/// Angular frequencies: bare number (rad/s), "rad/s", "2pi*<x> Hz|kHz|MHz|GHz",
/// or a multiple of omega_R / kappa / gamma / omega_m. A bare "MHz" without
/// the explicit 2pi factor is rejected. Times: "s", "ms", "us", "ns", or
/// "<x>/kappa", "<x>/gamma", "<x>/omega_m". Lengths: "m", "mm", "um", "nm".
/// Masses: "kg", "u".
///
/// Throws std::invalid_argument with a readable message on failure.
double parse_quantity(std::string_view text, Dimension dim,
                      const UnitContext& ctx = {});

}  // namespace qndbec
