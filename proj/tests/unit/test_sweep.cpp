#include <gtest/gtest.h>

#include <cmath>

#include "qndbec/constants.hpp"
#include "qndbec/errors.hpp"
#include "qndbec/golden.hpp"
#include "qndbec/sweep.hpp"

using namespace qndbec;

namespace {

PhysicalParams reference() {
  PhysicalParams p;
  p.N = 5e4;
  p.m_a = 86.909180527 * Constants::atomic_mass_unit;
  p.omega_c = 2.41494e15;
  p.omega_a = 2.41419e15;
  p.g0 = kTwoPi * 14.1e6;
  p.omega_R = kTwoPi * 3.77e3;
  p.kappa = kTwoPi * 13e6;
  p.gamma = 1e-3 * p.kappa;
  p.L = 178e-6;
  p.omega_sw = 0.0;
  p.eta_max = 0.655 * p.kappa;
  return p;
}

const double kOmegaR = kTwoPi * 3.77e3;

}  // namespace

TEST(Golden, FindsParabolaVertex) {
  const auto r = golden_section_minimize([](double x) { return (x - 1.3) * (x - 1.3) + 2.0; },
                                         0.0, 4.0, 1e-9);
  EXPECT_NEAR(r.x, 1.3, 1e-7);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_GT(r.iterations, 10);
}

TEST(Golden, ReportsMissingMinimum) {
  EXPECT_THROW(golden_section_minimize([](double x) { return x; }, 0.0, 1.0), NoMinimumInBracket);
  EXPECT_THROW(golden_section_minimize([](double x) { return -x; }, 0.0, 1.0), NoMinimumInBracket);
}

TEST(Sweep, AxisValidation) {
  SweepAxis a{"omega_sw", "omega_R", 0, 15, 151, false, {}};
  EXPECT_NO_THROW(a.validate());
  auto v = a.values_in_unit();
  EXPECT_EQ(v.size(), 151u);
  EXPECT_DOUBLE_EQ(v[10], 1.0);
  EXPECT_DOUBLE_EQ(v.back(), 15.0);
  a.unit = "Hz";
  EXPECT_THROW(a.validate(), ValidationError);
  a = {"eta_max", "kappa", 1, 1, 5, false, {}};
  EXPECT_THROW(a.validate(), ValidationError);
  a = {"eta_max", "kappa", 0, 1, 5, true, {}};
  EXPECT_THROW(a.validate(), ValidationError);
  a = {"eta_max", "kappa", 0.01, 1, 3, true, {}};
  EXPECT_NEAR(a.values_in_unit()[1], 0.1, 1e-15);
}

TEST(Sweep, OptimumIsCertified) {
  const PhysicalParams p = reference();
  for (double w : {0.0, 3.0, 10.0}) {
    const EtaOptimum o = optimize_eta(w * kOmegaR, p);
    PhysicalParams q = with_omega_sw(p, w * kOmegaR);
    const EffectiveModel m = effective_model(q, derive_params(q));
    EXPECT_LT(o.nadd_min_numeric, n_add(0.0, with_eta(m, 0.9 * o.eta_opt_numeric)));
    EXPECT_LT(o.nadd_min_numeric, n_add(0.0, with_eta(m, 1.1 * o.eta_opt_numeric)));
    EXPECT_LE(o.nadd_min_numeric, n_add(0.0, with_eta(m, o.eta_opt_closed)));
    EXPECT_LT(o.nadd_min_numeric, 0.5);
  }
}

TEST(Sweep, FrozenOptima) {
  const PhysicalParams p = reference();
  const EtaOptimum a = optimize_eta(0.0, p);
  EXPECT_NEAR(a.eta_opt_closed / a.kappa, 0.65634552629939071, 1e-6);
  EXPECT_NEAR(a.eta_opt_numeric / a.kappa, 0.60665879256770298, 1e-5);
  const EtaOptimum b = optimize_eta(10.0 * kOmegaR, p);
  EXPECT_NEAR(b.eta_opt_closed / b.kappa, 0.7912145526494257, 1e-6);
  EXPECT_NEAR(b.eta_opt_numeric / b.kappa, 0.78271520475213692, 1e-5);
}

TEST(Sweep, MaskShape) {
  const PhysicalParams p = reference();
  const SweepAxis ws{"omega_sw", "omega_R", 0, 15, 16, false, {}};
  const SweepAxis es{"eta_max", "kappa", 0.01, 3, 60, true, {}};
  const SweepResult r = sweep_nadd0(p, ws, es, 2);
  ASSERT_EQ(r.values.size(), 16u * 60u);
  const auto ev = es.values_in_unit();
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < ev.size(); ++j) {
      if (ev[j] <= 0.05) EXPECT_GT(r.at(i, j), 0.5);
    }
    // the sub-SQL region in each row is one interval
    int edges = 0;
    for (std::size_t j = 1; j < ev.size(); ++j) edges += r.mask[i * 60 + j] != r.mask[i * 60 + j - 1];
    EXPECT_LE(edges, 2);
    EXPECT_TRUE(std::count(r.mask.begin() + i * 60, r.mask.begin() + (i + 1) * 60, true) > 0);
  }
  EXPECT_EQ(r.params_hash.size(), 16u);
}

TEST(Sweep, WorkerCountDoesNotChangeValues) {
  const PhysicalParams p = reference();
  const SweepAxis ws{"omega_sw", "omega_R", 0, 15, 9, false, {}};
  const SweepAxis es{"eta_max", "kappa", 0.1, 2, 11, false, {}};
  const auto a = sweep_nadd0(p, ws, es, 1);
  const auto b = sweep_nadd0(p, ws, es, 4);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.mask, b.mask);
}

TEST(Sweep, MinimumCurvesDecrease) {
  const PhysicalParams p = reference();
  const SweepAxis ws{"omega_sw", "omega_R", 0, 20, 81, false, {}};
  const std::vector<double> kappas{kTwoPi * 0.1e6, kTwoPi * 1e6, kTwoPi * 13e6};
  const auto r = nadd_min_curves(p, ws, kappas);
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    for (std::size_t j = 1; j < 81; ++j) EXPECT_LT(r.at(i, j), r.at(i, j - 1));
  }
}

TEST(Sweep, NarrowCavityReachesFewPercent) {
  // 16 omega_m^2 = 100 kappa^2 at this omega_sw for kappa = 2 pi x 0.1 MHz
  const SweepAxis ws{"omega_sw", "omega_R", 0, 71.284740692231826, 2, false, {}};
  const auto r = nadd_min_curves(reference(), ws, {kTwoPi * 0.1e6});
  EXPECT_NEAR(r.at(0, 1), 0.035179877236514593, 1e-9);
  EXPECT_LE(r.at(0, 1), 0.04);
}

TEST(Sweep, FrequencyCurvesHaveSidebandMinima) {
  const PhysicalParams p = reference();
  const auto curves = nadd_frequency_curves(p, {0.0, 3.0 * kOmegaR}, 2001);
  for (const auto& c : curves) {
    EXPECT_NEAR(c.global_minimum_at, 0.0, 1e-6 * c.omega_m);
    int near_sideband = 0;
    for (double w : c.minima) near_sideband += std::abs(std::abs(w) - 2.0 * c.omega_m) < 0.05 * c.omega_m;
    EXPECT_EQ(near_sideband, 2);
  }
}
