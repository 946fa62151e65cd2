#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "qndbec/config.hpp"
#include "qndbec/errors.hpp"

using namespace qndbec;

namespace {
Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, "test");
}
}  // namespace

TEST(Config, ParsesKeysCommentsAndQuotes) {
  const Config c = parse("# header\nkappa = 2pi*13 MHz  # trailing\n\nname = \"a b\"\n");
  EXPECT_EQ(c.get("kappa").value(), "2pi*13 MHz");
  EXPECT_EQ(c.get("name").value(), "a b");
  EXPECT_FALSE(c.has("gamma"));
}

TEST(Config, DuplicateAndMalformedLines) {
  EXPECT_THROW(parse("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(parse("no equals sign\n"), ConfigError);
  EXPECT_THROW(parse("bad-key = 1\n"), ConfigError);
}

TEST(Config, MissingKeyNamesIt) {
  const Config c = parse("gamma = 1\n");
  try {
    c.require("kappa");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "kappa");
    EXPECT_NE(std::string(e.what()).find("kappa"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("--kappa"), std::string::npos);
  }
}

TEST(Config, BadQuantityNamesTheKey) {
  const Config c = parse("kappa = 13 MHz\n");
  try {
    c.quantity("kappa", Dimension::AngularFrequency);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "kappa");
  }
}

TEST(Config, OverridesWin) {
  Config c = parse("kappa = 1\ngamma = 2\n");
  Config o = parse("kappa = 5\n");
  c.merge(o);
  EXPECT_DOUBLE_EQ(c.quantity("kappa", Dimension::AngularFrequency), 5.0);
  c.set("gamma", "7");
  EXPECT_DOUBLE_EQ(c.quantity("gamma", Dimension::AngularFrequency), 7.0);
  c.erase("gamma");
  EXPECT_FALSE(c.optional_quantity("gamma", Dimension::AngularFrequency).has_value());
}

TEST(Config, FlagNames) {
  EXPECT_EQ(flag_name("omega_sw"), "omega-sw");
  EXPECT_EQ(flag_name("n_traj"), "n-traj");
  EXPECT_EQ(flag_name("omega_R"), "omega-r");
}
