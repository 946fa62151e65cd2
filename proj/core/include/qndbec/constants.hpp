#pragma once

namespace qndbec {

// CODATA 2018. hbar, kB and c are exact in the 2019 SI; the atomic mass unit
// carries its 2018 recommended value.
struct Constants {
  static constexpr double hbar = 1.054571817e-34;      // J s
  static constexpr double kB = 1.380649e-23;           // J / K
  static constexpr double c_light = 299792458.0;       // m / s
  static constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace qndbec
