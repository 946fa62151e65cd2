#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qndbec/drive.hpp"
#include "qndbec/errors.hpp"

using namespace qndbec;

TEST(Drive, BetaZeroExample) {
  const BetaComponents b = beta_fourier(1.0, 1.0, 1.0, 0.1);
  EXPECT_NEAR(b.beta_0.real(), -0.49875311720698254, 1e-15);
  EXPECT_NEAR(b.beta_0.imag(), -0.024937655860349127, 1e-15);
}

TEST(Drive, BetaBarRelations) {
  const BetaComponents b = beta_fourier(0.7, 1.3, 2.0, 0.05);
  EXPECT_NEAR(b.beta_bar_0.imag(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b.beta_bar_m2 - std::conj(b.beta_bar_2)), 0.0, 1e-15);
}

TEST(Drive, BetaScalesQuadratically) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double G = u(rng), a = u(rng), w = u(rng), g = 0.01 * u(rng);
    const BetaComponents b1 = beta_fourier(G, a, w, g);
    const BetaComponents b2 = beta_fourier(G, 2.0 * a, w, g);
    EXPECT_NEAR(std::abs(b2.beta_0 - 4.0 * b1.beta_0), 0.0, 1e-12 * std::abs(b2.beta_0));
    EXPECT_NEAR(std::abs(b2.beta_2 - 4.0 * b1.beta_2), 0.0, 1e-12 * std::abs(b2.beta_2));
    EXPECT_NEAR(std::abs(b2.beta_m2 - 4.0 * b1.beta_m2), 0.0, 1e-12 * std::abs(b2.beta_m2));
  }
}

TEST(Drive, ResonantLimits) {
  const BetaComponents b = beta_fourier(1.0, 1.0, 1.0, 1e-9);
  EXPECT_NEAR(b.beta_0.real(), b.approx_0, 1e-8);
  EXPECT_NEAR(b.beta_2.real(), b.approx_2, 1e-8);
  EXPECT_NEAR(b.beta_m2.real(), b.approx_m2, 1e-8);
}

TEST(Drive, DesignedPhaseAndAmplitude) {
  const DriveSpec d = design_drive(2.0, 4.0, 1.0);
  EXPECT_NEAR(d.eta_max, 2.0 * std::sqrt(4.0 + 1.0), 1e-14);
  EXPECT_NEAR(d.phi, std::atan(0.5), 1e-15);
  EXPECT_NEAR(d.eta(0.0), d.eta_max * std::cos(d.phi), 1e-14);
  EXPECT_DOUBLE_EQ(d.tone_amplitude(), 0.5 * d.eta_max);
  const auto j = to_json(d, 100.0);
  EXPECT_DOUBLE_EQ(j["tones"][0]["frequency"].get<double>(), 101.0);
  EXPECT_DOUBLE_EQ(j["tones"][1]["frequency"].get<double>(), 99.0);
  EXPECT_THROW(design_drive(1.0, -1.0, 1.0), ValidationError);
}

TEST(Drive, MeanFieldReachesDesignedOrbit) {
  EffectiveModel m{10.0, 0.2, 1.0, 0.01, 0.5, 0.0};
  const MeanFieldResult r = integrate_meanfield(mean_field_problem(m));
  const double amp = std::abs(r.alpha_harmonic(1)) + std::abs(r.alpha_harmonic(-1));
  // the beta feedback shifts the detuning by G beta_bar_0, tiny here
  EXPECT_NEAR(amp / m.alpha_max, 1.0, 1e-3);
  EXPECT_NEAR(std::abs(r.alpha_harmonic(0)), 0.0, 1e-3 * m.alpha_max);
  const BetaComponents b = beta_fourier(m.G, m.alpha_max, m.omega_m, m.gamma);
  EXPECT_NEAR(std::abs(r.beta_harmonic(0) - b.beta_0) / std::abs(b.beta_0), 0.0, 1e-3);
  EXPECT_NEAR(std::abs(r.beta_harmonic(2) - b.beta_2) / std::abs(b.beta_2), 0.0, 1e-3);
  EXPECT_NEAR(std::abs(r.beta_harmonic(-2) - b.beta_m2) / std::abs(b.beta_m2), 0.0, 1e-3);
  EXPECT_NEAR(r.mean_effective_detuning, -m.G * b.beta_bar_0.real(), 1e-3 * std::abs(m.G * b.beta_bar_0.real()));
}

TEST(Drive, CompensationCancelsMeanShift) {
  EffectiveModel m{10.0, 0.2, 1.0, 0.5, 1.0, 0.0};
  const BetaComponents b = beta_fourier(m.G, m.alpha_max, m.omega_m, m.gamma);
  const MeanFieldResult r = integrate_meanfield(mean_field_problem(m, compensating_detuning(m.G, b)));
  EXPECT_LT(std::abs(r.mean_effective_detuning), 0.05 * std::abs(m.G * b.beta_bar_0.real()));
}

TEST(Drive, StepErrorGuard) {
  EffectiveModel m{10.0, 0.2, 1.0, 0.01, 0.5, 0.0};
  MeanFieldOptions o;
  o.dt = 0.5;  // kappa dt = 5: far outside the accurate range
  EXPECT_THROW(integrate_meanfield(mean_field_problem(m), o), StiffnessError);
}
