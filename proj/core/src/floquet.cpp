#include <cmath>

#include <Eigen/Dense>

#include "qndbec/constants.hpp"
#include "qndbec/langevin.hpp"

namespace qndbec {

namespace {

// Drift of (X, Y, Q, P) at time t.
Eigen::Matrix4d drift(const EffectiveModel& m, DriveMode mode, double t) {
  const double ph = m.omega_m * t;
  const double c = 2.0 * m.coupling() * (mode == DriveMode::Modulated ? std::cos(ph) : 1.0);
  const double s = std::sin(ph), co = std::cos(ph);
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 0) = -0.5 * m.kappa;
  a(1, 1) = -0.5 * m.kappa;
  a(1, 2) = -c * co;
  a(1, 3) = -c * s;
  a(2, 2) = -0.5 * m.gamma;
  a(2, 0) = c * s;
  a(3, 3) = -0.5 * m.gamma;
  a(3, 0) = -c * co;
  return a;
}

}  // namespace

std::vector<std::complex<double>> floquet_multipliers(const EffectiveModel& m, DriveMode mode,
                                                      int steps_per_period) {
  const double period = (mode == DriveMode::Modulated ? kPi : kTwoPi) / m.omega_m;
  // keep RK4 well inside its stability region for the fast cavity decay
  const int n = std::max(steps_per_period, static_cast<int>(std::ceil(m.kappa * period)));
  const double h = period / n;

  Eigen::Matrix4d phi = Eigen::Matrix4d::Identity();
  for (int i = 0; i < n; ++i) {
    const double t = i * h;
    const Eigen::Matrix4d a0 = drift(m, mode, t);
    const Eigen::Matrix4d a1 = drift(m, mode, t + 0.5 * h);
    const Eigen::Matrix4d a2 = drift(m, mode, t + h);
    const Eigen::Matrix4d k1 = a0 * phi;
    const Eigen::Matrix4d k2 = a1 * (phi + 0.5 * h * k1);
    const Eigen::Matrix4d k3 = a1 * (phi + 0.5 * h * k2);
    const Eigen::Matrix4d k4 = a2 * (phi + h * k3);
    phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Eigen::EigenSolver<Eigen::Matrix4d> es(phi, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < 4; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

bool drift_is_stable(const EffectiveModel& m, DriveMode mode) {
  for (const auto& mu : floquet_multipliers(m, mode)) {
    if (!(std::abs(mu) < 1.0)) return false;
  }
  return true;
}

}  // namespace qndbec
