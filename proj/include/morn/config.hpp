#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morn/episode.hpp"
#include "morn/executive.hpp"
#include "morn/navigator.hpp"
#include "morn/perception.hpp"

namespace morn {

struct BenchParams {
  int episodes_k2 = 300;
  int episodes_k3 = 200;
  std::uint64_t seed = 7;
  double success_radius = 3.0;  // metres from the true goal at commit time
  double reward = 1.0;
  double lambda = 0.0;  // cost per step in the mission utility
};

struct RunConfig {
  ExecutiveConfig exec;
  PerceptionParams perception;
  NavParams nav;
  SuiteParams suite;
  BenchParams bench;
};

// Invalid or unknown configuration; `key` names the culprit.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Every recognised dotted key, in file order.
std::vector<std::string> config_keys();

void set_value(RunConfig& config, std::string_view key, std::string_view value);
std::string get_value(const RunConfig& config, std::string_view key);

// "key = value" lines; '#' starts a comment. Later keys override earlier ones.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Derives dependent fields (step length from cell size, goal detectability
// from perception), checks every module's constraints and returns warnings.
// Throws ConfigError.
std::vector<std::string> finalize(RunConfig& config);

// Full default file text.
std::string dump_config(const RunConfig& config);

// Maps sweep names (tau_a, tau_s, tau_c, d_commit, t_g) to dotted keys;
// dotted keys pass through. Throws ConfigError for anything else.
std::string sweep_key(std::string_view name);

}  // namespace morn
