#pragma once

#include <string_view>
#include <vector>

#include "qndbec/langevin.hpp"
#include "qndbec/spectra.hpp"

namespace qndbec {

enum class Observable { X, Y, Q, P, Y_out };

std::string_view to_string(Observable o);
Observable observable_from_string(std::string_view s);

struct WelchOptions {
  double segment_length = 0.0;  // time units; 0 selects 64 / gamma
  double overlap = 0.5;
  int min_segments = 8;
};

/// Symmetrized, Hann-windowed, segment- and ensemble-averaged periodogram.
///
/// Values are the two-sided density S(omega) = int R(tau) e^{i omega tau}
/// d tau on the grid omega_k = 2 pi k / T_seg, k = 0 .. n/2 (the negative half
/// is its mirror image). `error` is the standard error from the spread of
/// per-trajectory averages. Throws InsufficientData below `min_segments`
/// segments in total.
SpectrumSeries estimate_spectrum(const TrajectoryEnsemble& ens, Observable which,
                                 const WelchOptions& options = {});

/// Sample series of one observable in one trajectory.
std::vector<double> observable_series(const TrajectoryEnsemble& ens,
                                      std::size_t traj, Observable which);

/// Sample variance over all trajectories and samples, with the standard error
/// from the per-trajectory spread.
struct VarianceEstimate {
  double value = 0.0;
  double error = 0.0;
};
VarianceEstimate estimate_variance(const TrajectoryEnsemble& ens, Observable which);

/// Two-sided band power of one observable, (1/2 pi) times the integral of the
/// estimated spectrum over lo <= |omega| <= hi. The error is the standard
/// error of the per-trajectory band powers.
VarianceEstimate estimate_band_power(const TrajectoryEnsemble& ens,
                                     Observable which, double lo, double hi,
                                     const WelchOptions& options = {});

}  // namespace qndbec
