#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "qndbec/units.hpp"

namespace qndbec {

/// Flat key/value configuration. One `key = value` per line, `#` starts a
/// comment, values are unit-suffixed strings resolved later by the consumer.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<input>");
  static Config load(const std::filesystem::path& path);

  /// Later sets win; used for command-line overrides.
  void set(const std::string& key, std::string value);
  void merge(const Config& overrides);
  void erase(const std::string& key);

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Raw string of a required key; throws ConfigError naming the key.
  const std::string& require(const std::string& key) const;

  /// Parse a key as a quantity; throws ConfigError naming the key on a bad value.
  double quantity(const std::string& key, Dimension dim,
                  const UnitContext& ctx = {}) const;
  std::optional<double> optional_quantity(const std::string& key, Dimension dim,
                                          const UnitContext& ctx = {}) const;

 private:
  std::map<std::string, std::string> entries_;
};

/// Canonical "--flag-name" spelling of a config key ("omega_sw" -> "omega-sw").
std::string flag_name(const std::string& key);

}  // namespace qndbec
