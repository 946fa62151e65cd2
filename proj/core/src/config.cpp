#include "qndbec/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qndbec/errors.hpp"

namespace qndbec {

namespace {

std::string trim(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  return std::all_of(k.begin(), k.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", source + ":" + std::to_string(lineno) +
                                ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (!valid_key(key)) {
      throw ConfigError(key, source + ":" + std::to_string(lineno) +
                                 ": invalid key '" + key + "'");
    }
    if (cfg.has(key)) {
      throw ConfigError(key, source + ":" + std::to_string(lineno) +
                                 ": duplicate key '" + key + "'");
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  return parse(in, path.string());
}

void Config::set(const std::string& key, std::string value) {
  entries_[key] = std::move(value);
}

void Config::erase(const std::string& key) { entries_.erase(key); }

void Config::merge(const Config& overrides) {
  for (const auto& [k, v] : overrides.entries_) entries_[k] = v;
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::string& Config::require(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(key, "missing required key '" + key + "' (config key or --" +
                               flag_name(key) + ")");
  }
  return it->second;
}

double Config::quantity(const std::string& key, Dimension dim,
                        const UnitContext& ctx) const {
  const std::string& raw = require(key);
  try {
    return parse_quantity(raw, dim, ctx);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, "bad value for '" + key + "': " + e.what());
  }
}

std::optional<double> Config::optional_quantity(const std::string& key, Dimension dim,
                                                const UnitContext& ctx) const {
  if (!has(key)) return std::nullopt;
  return quantity(key, dim, ctx);
}

std::string flag_name(const std::string& key) {
  std::string f = key;
  std::replace(f.begin(), f.end(), '_', '-');
  std::transform(f.begin(), f.end(), f.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return f;
}

}  // namespace qndbec
