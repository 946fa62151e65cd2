#include "qndbec/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qndbec/constants.hpp"

namespace qndbec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool consume_prefix(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) == prefix) {
    s.remove_prefix(prefix.size());
    return true;
  }
  return false;
}

double reference(const std::optional<double>& v, std::string_view name,
                 std::string_view text) {
  if (!v) {
    throw std::invalid_argument("'" + std::string(text) + "' is relative to " +
                                std::string(name) + ", which is not known here");
  }
  return *v;
}

struct Split {
  double number;
  std::string_view unit;
};

// "<number>[ws][*][ws]<unit>"
Split split_number(std::string_view text, std::string_view original) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) {
    throw std::invalid_argument("expected a number in '" + std::string(original) + "'");
  }
  std::string_view rest = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (!rest.empty() && rest.front() == '*') rest = trim(rest.substr(1));
  return {value, rest};
}

}  // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Dimensionless: return "dimensionless";
    case Dimension::AngularFrequency: return "angular frequency";
    case Dimension::Time: return "time";
    case Dimension::Length: return "length";
    case Dimension::Mass: return "mass";
  }
  return "?";
}

std::optional<std::string> unit_reference(std::string_view text) {
  for (const char* name : {"omega_R", "omega_m", "kappa", "gamma"}) {
    if (text.find(name) != std::string_view::npos) return std::string(name);
  }
  return std::nullopt;
}

double parse_quantity(std::string_view text, Dimension dim, const UnitContext& ctx) {
  const std::string_view original = text;
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty value");

  bool two_pi = false;
  if (consume_prefix(text, "2pi*") || consume_prefix(text, "2*pi*")) {
    two_pi = true;
    text = trim(text);
  }

  // from_chars does not accept a leading '+'.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const Split s = split_number(text, original);
  const std::string_view unit = s.unit;
  const double x = s.number;

  auto bad_unit = [&]() -> double {
    throw std::invalid_argument("unit '" + std::string(unit) + "' in '" +
                                std::string(original) + "' is not a valid " +
                                std::string(to_string(dim)) + " unit");
  };

  switch (dim) {
    case Dimension::Dimensionless:
      if (two_pi || !unit.empty()) return bad_unit();
      return x;

    case Dimension::AngularFrequency: {
      if (two_pi) {
        if (unit == "Hz") return kTwoPi * x;
        if (unit == "kHz") return kTwoPi * x * 1e3;
        if (unit == "MHz") return kTwoPi * x * 1e6;
        if (unit == "GHz") return kTwoPi * x * 1e9;
        return bad_unit();
      }
      if (unit.empty() || unit == "rad/s") return x;
      if (unit == "Hz" || unit == "kHz" || unit == "MHz" || unit == "GHz") {
        throw std::invalid_argument(
            "'" + std::string(original) +
            "' is ambiguous: write the angular frequency as 2pi*<value> " +
            std::string(unit) + " or in rad/s");
      }
      if (unit == "omega_R") return x * reference(ctx.omega_R, "omega_R", original);
      if (unit == "kappa") return x * reference(ctx.kappa, "kappa", original);
      if (unit == "gamma") return x * reference(ctx.gamma, "gamma", original);
      if (unit == "omega_m") return x * reference(ctx.omega_m, "omega_m", original);
      return bad_unit();
    }

    case Dimension::Time:
      if (two_pi) return bad_unit();
      if (unit.empty() || unit == "s") return x;
      if (unit == "ms") return x * 1e-3;
      if (unit == "us") return x * 1e-6;
      if (unit == "ns") return x * 1e-9;
      if (unit == "/kappa") return x / reference(ctx.kappa, "kappa", original);
      if (unit == "/gamma") return x / reference(ctx.gamma, "gamma", original);
      if (unit == "/omega_m") return x / reference(ctx.omega_m, "omega_m", original);
      return bad_unit();

    case Dimension::Length:
      if (two_pi) return bad_unit();
      if (unit.empty() || unit == "m") return x;
      if (unit == "mm") return x * 1e-3;
      if (unit == "um") return x * 1e-6;
      if (unit == "nm") return x * 1e-9;
      return bad_unit();

    case Dimension::Mass:
      if (two_pi) return bad_unit();
      if (unit.empty() || unit == "kg") return x;
      if (unit == "u") return x * Constants::atomic_mass_unit;
      return bad_unit();
  }
  return bad_unit();
}

}  // namespace qndbec
