#include <gtest/gtest.h>

#include <stdexcept>

#include "qndbec/constants.hpp"
#include "qndbec/units.hpp"

using namespace qndbec;

TEST(Units, AngularFrequencyForms) {
  EXPECT_DOUBLE_EQ(parse_quantity("12.5", Dimension::AngularFrequency), 12.5);
  EXPECT_DOUBLE_EQ(parse_quantity("3e4 rad/s", Dimension::AngularFrequency), 3e4);
  EXPECT_DOUBLE_EQ(parse_quantity("2pi*13 MHz", Dimension::AngularFrequency), kTwoPi * 13e6);
  EXPECT_DOUBLE_EQ(parse_quantity("2*pi*3.77kHz", Dimension::AngularFrequency), kTwoPi * 3.77e3);
  EXPECT_DOUBLE_EQ(parse_quantity("2pi*1 GHz", Dimension::AngularFrequency), kTwoPi * 1e9);
}

TEST(Units, BareHertzIsAmbiguous) {
  EXPECT_THROW(parse_quantity("13 MHz", Dimension::AngularFrequency), std::invalid_argument);
  EXPECT_THROW(parse_quantity("5Hz", Dimension::AngularFrequency), std::invalid_argument);
}

TEST(Units, RelativeUnitsNeedTheirScale) {
  UnitContext ctx;
  ctx.kappa = 2.0;
  ctx.omega_R = 10.0;
  EXPECT_DOUBLE_EQ(parse_quantity("0.655kappa", Dimension::AngularFrequency, ctx), 1.31);
  EXPECT_DOUBLE_EQ(parse_quantity("3 omega_R", Dimension::AngularFrequency, ctx), 30.0);
  EXPECT_DOUBLE_EQ(parse_quantity("4 * omega_R", Dimension::AngularFrequency, ctx), 40.0);
  EXPECT_THROW(parse_quantity("1 gamma", Dimension::AngularFrequency, ctx), std::invalid_argument);
  EXPECT_DOUBLE_EQ(parse_quantity("0.02/kappa", Dimension::Time, ctx), 0.01);
}

TEST(Units, TimeLengthMass) {
  EXPECT_DOUBLE_EQ(parse_quantity("3 ms", Dimension::Time), 3e-3);
  EXPECT_DOUBLE_EQ(parse_quantity("178 um", Dimension::Length), 178e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("2 nm", Dimension::Length), 2e-9);
  EXPECT_DOUBLE_EQ(parse_quantity("87 u", Dimension::Mass), 87 * Constants::atomic_mass_unit);
}

TEST(Units, Rejections) {
  EXPECT_THROW(parse_quantity("", Dimension::Time), std::invalid_argument);
  EXPECT_THROW(parse_quantity("abc", Dimension::Time), std::invalid_argument);
  EXPECT_THROW(parse_quantity("3 furlongs", Dimension::Length), std::invalid_argument);
  EXPECT_THROW(parse_quantity("2 kappa", Dimension::Dimensionless), std::invalid_argument);
  EXPECT_THROW(parse_quantity("2pi*3 s", Dimension::Time), std::invalid_argument);
}

TEST(Units, ReferenceDetection) {
  EXPECT_EQ(unit_reference("0.655kappa").value(), "kappa");
  EXPECT_EQ(unit_reference("10/gamma").value(), "gamma");
  EXPECT_FALSE(unit_reference("2pi*13 MHz").has_value());
}
