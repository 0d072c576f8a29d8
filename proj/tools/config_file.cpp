#include "config_file.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fbwave/error.hpp"
#include "fbwave/io.hpp"

namespace fbwave::cli {

namespace {

constexpr std::array<const char*, 11> kKeys = {
    "d",  "delta", "reaction", "g0",    "u0", "L_y", "N", "dt", "T_end", "output_every",
    "predictor_corrector"};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap parse_config(const std::string& text, const std::string& origin) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find_if(kKeys.begin(), kKeys.end(), [&](const char* k) { return key == k; }) ==
        kKeys.end()) {
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty value for '" + key +
                            "'");
    }
    cfg[key] = value;
  }
  return cfg;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  return parse_config(io::read_text(path), path.string());
}

double config_number(const ConfigMap& cfg, const std::string& key) {
  const std::string& s = cfg.at(key);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ValidationError("config key '" + key + "' expects a number, got '" + s + "'");
  }
  return v;
}

int config_int(const ConfigMap& cfg, const std::string& key) {
  const double v = config_number(cfg, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ValidationError("config key '" + key + "' expects an integer");
  }
  return static_cast<int>(v);
}

bool config_bool(const ConfigMap& cfg, const std::string& key) {
  const std::string& s = cfg.at(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ValidationError("config key '" + key + "' expects true or false, got '" + s + "'");
}

}  // namespace fbwave::cli
