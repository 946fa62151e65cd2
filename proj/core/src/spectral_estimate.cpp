#include "qndbec/spectral_estimate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "qndbec/constants.hpp"
#include "qndbec/errors.hpp"

namespace qndbec {

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::X: return "X";
    case Observable::Y: return "Y";
    case Observable::Q: return "Q";
    case Observable::P: return "P";
    case Observable::Y_out: return "Y_out";
  }
  return "?";
}

Observable observable_from_string(std::string_view s) {
  for (auto o : {Observable::X, Observable::Y, Observable::Q, Observable::P, Observable::Y_out}) {
    if (s == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown observable '" + std::string(s) + "' (X, Y, Q, P, Y_out)");
}

std::vector<double> observable_series(const TrajectoryEnsemble& ens, std::size_t traj,
                                      Observable which) {
  const Trajectory& t = ens.trajectories.at(traj);
  auto need_readout = [&] {
    if (t.Y.empty()) {
      throw ValidationError("observable needs the readout quadrature; simulate with track_readout");
    }
  };
  switch (which) {
    case Observable::X: return t.X;
    case Observable::Q: return t.Q;
    case Observable::P: return t.P;
    case Observable::Y: need_readout(); return t.Y;
    case Observable::Y_out: {
      need_readout();
      const double sk = std::sqrt(ens.model.kappa);
      std::vector<double> out(t.Y.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = t.Y_in[i] - sk * t.Y[i];
      return out;
    }
  }
  return {};
}

namespace {

struct FftwPlan {
  int n;
  double* in;
  fftw_complex* out;
  fftw_plan plan;

  explicit FftwPlan(int n_) : n(n_) {
    in = fftw_alloc_real(static_cast<std::size_t>(n));
    out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  }
  ~FftwPlan() {
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
};

struct PerTrajectory {
  std::vector<double> omega;
  std::vector<std::vector<double>> spectra;  // one averaged periodogram per trajectory
};

PerTrajectory welch(const TrajectoryEnsemble& ens, Observable which, const WelchOptions& opt) {
  const double h = ens.sample_interval;
  const double seg_time = opt.segment_length > 0.0 ? opt.segment_length : 64.0 / ens.model.gamma;
  if (!(opt.overlap >= 0.0 && opt.overlap < 1.0)) {
    throw std::invalid_argument("overlap must lie in [0, 1)");
  }
  const long n_seg = std::lround(seg_time / h);
  const long hop = std::max(1L, std::lround(static_cast<double>(n_seg) * (1.0 - opt.overlap)));
  const long n = static_cast<long>(ens.n_samples);
  const long per_traj = (n_seg >= 4 && n >= n_seg) ? (n - n_seg) / hop + 1 : 0;
  const long total = per_traj * static_cast<long>(ens.trajectories.size());
  if (total < opt.min_segments) {
    throw InsufficientData("only " + std::to_string(total) + " averaging segments of length " +
                           std::to_string(seg_time) + " fit the record; need " +
                           std::to_string(opt.min_segments));
  }

  std::vector<double> window(static_cast<std::size_t>(n_seg));
  double wsum2 = 0.0;
  for (long i = 0; i < n_seg; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n_seg));
    wsum2 += window[i] * window[i];
  }
  const double scale = h / wsum2;
  const long n_bins = n_seg / 2 + 1;

  PerTrajectory res;
  res.omega.resize(static_cast<std::size_t>(n_bins));
  for (long k = 0; k < n_bins; ++k) {
    res.omega[k] = kTwoPi * static_cast<double>(k) / (static_cast<double>(n_seg) * h);
  }

  FftwPlan fft(static_cast<int>(n_seg));
  res.spectra.reserve(ens.trajectories.size());
  for (std::size_t t = 0; t < ens.trajectories.size(); ++t) {
    const std::vector<double> x = observable_series(ens, t, which);
    std::vector<double> acc(static_cast<std::size_t>(n_bins), 0.0);
    for (long s = 0; s < per_traj; ++s) {
      const double* src = x.data() + s * hop;
      for (long i = 0; i < n_seg; ++i) fft.in[i] = window[i] * src[i];
      fftw_execute(fft.plan);
      for (long k = 0; k < n_bins; ++k) {
        acc[k] += fft.out[k][0] * fft.out[k][0] + fft.out[k][1] * fft.out[k][1];
      }
    }
    for (double& v : acc) v *= scale / static_cast<double>(per_traj);
    res.spectra.push_back(std::move(acc));
  }
  return res;
}

VarianceEstimate mean_and_error(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

}  // namespace

SpectrumSeries estimate_spectrum(const TrajectoryEnsemble& ens, Observable which,
                                 const WelchOptions& options) {
  const PerTrajectory w = welch(ens, which, options);
  SpectrumSeries s;
  s.label = "S_" + std::string(to_string(which));
  s.omega = w.omega;
  s.values.resize(w.omega.size());
  s.error.resize(w.omega.size());
  std::vector<double> column(w.spectra.size());
  for (std::size_t k = 0; k < w.omega.size(); ++k) {
    for (std::size_t t = 0; t < w.spectra.size(); ++t) column[t] = w.spectra[t][k];
    const auto e = mean_and_error(column);
    s.values[k] = e.value;
    s.error[k] = e.error;
  }
  return s;
}

VarianceEstimate estimate_variance(const TrajectoryEnsemble& ens, Observable which) {
  if (ens.n_samples == 0 || ens.trajectories.empty()) throw InsufficientData("empty ensemble");
  std::vector<double> per(ens.trajectories.size());
  for (std::size_t t = 0; t < per.size(); ++t) {
    const auto x = observable_series(ens, t, which);
    double ss = 0.0;
    for (double v : x) ss += v * v;  // the process has zero mean by construction
    per[t] = ss / static_cast<double>(x.size());
  }
  return mean_and_error(per);
}

VarianceEstimate estimate_band_power(const TrajectoryEnsemble& ens, Observable which, double lo,
                                     double hi, const WelchOptions& options) {
  if (!(hi > lo) || lo < 0.0) throw std::invalid_argument("band needs 0 <= lo < hi");
  const PerTrajectory w = welch(ens, which, options);
  const double dw = w.omega.size() > 1 ? w.omega[1] - w.omega[0] : 0.0;
  std::vector<double> per(w.spectra.size(), 0.0);
  for (std::size_t k = 0; k < w.omega.size(); ++k) {
    if (w.omega[k] < lo || w.omega[k] > hi) continue;
    for (std::size_t t = 0; t < per.size(); ++t) per[t] += w.spectra[t][k];
  }
  // both signs of omega, then d omega / 2 pi
  for (double& v : per) v *= 2.0 * dw / kTwoPi;
  return mean_and_error(per);
}

}  // namespace qndbec
