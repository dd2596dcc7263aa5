#pragma once

// Settings resolved from CLI flags, HOPFBOUND_* environment variables and a
// key=value config file, in that order of precedence.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "hopfbound/hopf.hpp"

namespace hopfbound::app {

using ConfigLayer = std::map<std::string, std::string>;
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Keys understood in every layer.
inline constexpr const char* kConfigKeys[] = {
    "budget_rules", "budget_time", "budget_lhs", "full_budget_per_iteration",
    "cache",        "jobs",        "seed_order",
};

struct Settings {
  rewrite::CompletionBudget budget;
  bool full_budget_per_iteration = false;
  std::optional<std::string> cache_dir;
  std::optional<std::string> seed_order;
  std::size_t jobs = 1;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown keys are errors.
ConfigLayer parse_config_text(const std::string& text, const std::string& origin);
ConfigLayer load_config_file(const std::string& path);

/// HOPFBOUND_<KEY> for every known key (upper case).
ConfigLayer environment_layer(const EnvLookup& env);

EnvLookup process_environment();

/// Later layers override earlier ones: file, env, cli.
Settings resolve_settings(const ConfigLayer& file, const ConfigLayer& env, const ConfigLayer& cli);

}  // namespace hopfbound::app
