#include "hopfbound/app/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hopfbound::app {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool known_key(const std::string& k) {
  return std::any_of(std::begin(kConfigKeys), std::end(kConfigKeys),
                     [&](const char* c) { return k == c; });
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || out == 0)
    throw ConfigError(key + ": expected a positive integer, got '" + v + "'");
  return out;
}

double parse_seconds(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !(out > 0.0))
    throw ConfigError(key + ": expected a positive number of seconds, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

}  // namespace

ConfigLayer parse_config_text(const std::string& text, const std::string& origin) {
  ConfigLayer out;
  std::istringstream is(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(n) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!known_key(key))
      throw ConfigError(origin + ":" + std::to_string(n) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigLayer load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

ConfigLayer environment_layer(const EnvLookup& env) {
  ConfigLayer out;
  for (const char* key : kConfigKeys) {
    std::string name = "HOPFBOUND_";
    for (const char* c = key; *c; ++c) name.push_back(static_cast<char>(std::toupper(*c)));
    if (auto v = env(name)) out[key] = *v;
  }
  return out;
}

EnvLookup process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
}

Settings resolve_settings(const ConfigLayer& file, const ConfigLayer& env, const ConfigLayer& cli) {
  ConfigLayer merged = file;
  for (const auto& [k, v] : env) merged[k] = v;
  for (const auto& [k, v] : cli) merged[k] = v;

  Settings s;
  for (const auto& [k, v] : merged) {
    if (k == "budget_rules")
      s.budget.max_rules = parse_count(k, v);
    else if (k == "budget_lhs")
      s.budget.max_lhs_length = parse_count(k, v);
    else if (k == "budget_time")
      s.budget.max_seconds = parse_seconds(k, v);
    else if (k == "full_budget_per_iteration")
      s.full_budget_per_iteration = parse_bool(k, v);
    else if (k == "cache")
      s.cache_dir = v.empty() ? std::nullopt : std::optional(v);
    else if (k == "jobs")
      s.jobs = parse_count(k, v);
    else if (k == "seed_order")
      s.seed_order = v.empty() ? std::nullopt : std::optional(v);
    else
      throw ConfigError("unknown setting '" + k + "'");
  }
  return s;
}

}  // namespace hopfbound::app
