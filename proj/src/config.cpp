#include "morn/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "morn/meta_state.hpp"

namespace morn {

namespace {

struct KeyDef {
  std::string name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view text) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x)) {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  return x;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view text) {
  Int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
  }
  return x;
}

std::string show(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(x);
}

template <typename T>
KeyDef real(std::string name, T RunConfig::*group, double T::*field) {
  return {name,
          [name, group, field](RunConfig& c, std::string_view v) { c.*group.*field = to_double(name, v); },
          [group, field](const RunConfig& c) { return show(c.*group.*field); }};
}

template <typename T, typename Int>
KeyDef integer(std::string name, T RunConfig::*group, Int T::*field) {
  return {name,
          [name, group, field](RunConfig& c, std::string_view v) { c.*group.*field = to_int<Int>(name, v); },
          [group, field](const RunConfig& c) { return std::to_string(c.*group.*field); }};
}

template <typename Leaf, typename Field>
KeyDef nested(std::string name, Leaf& (*access)(RunConfig&), Field Leaf::*field) {
  auto cget = [access](const RunConfig& c) -> const Leaf& { return access(const_cast<RunConfig&>(c)); };
  if constexpr (std::is_floating_point_v<Field>) {
    return {name, [name, access, field](RunConfig& c, std::string_view v) { access(c).*field = to_double(name, v); },
            [cget, field](const RunConfig& c) { return show(cget(c).*field); }};
  } else {
    return {name,
            [name, access, field](RunConfig& c, std::string_view v) { access(c).*field = to_int<Field>(name, v); },
            [cget, field](const RunConfig& c) { return std::to_string(cget(c).*field); }};
  }
}

Thresholds& th(RunConfig& c) { return c.exec.thresholds; }
StateWeights& wt(RunConfig& c) { return c.exec.weights; }
SignalParams& sg(RunConfig& c) { return c.exec.signal; }
BudgetCaps& caps(RunConfig& c) { return c.exec.caps; }
MapParams& mp(RunConfig& c) { return c.suite.map; }

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = [] {
    std::vector<KeyDef> t;
    t.push_back(nested("thresholds.abort", &th, &Thresholds::abort_below));
    t.push_back(nested("thresholds.switch", &th, &Thresholds::switch_below));
    t.push_back(nested("thresholds.commit", &th, &Thresholds::commit_above));
    t.push_back(nested("thresholds.commit_distance", &th, &Thresholds::commit_distance));
    t.push_back(nested("thresholds.grace", &th, &Thresholds::grace_steps));
    t.push_back(nested("weights.pot_v", &wt, &StateWeights::pot_v));
    t.push_back(nested("weights.pot_s", &wt, &StateWeights::pot_s));
    t.push_back(nested("weights.pot_stab", &wt, &StateWeights::pot_stab));
    t.push_back(nested("weights.gate_gain", &wt, &StateWeights::gate_gain));
    t.push_back(nested("weights.gate_inertia", &wt, &StateWeights::gate_inertia));
    t.push_back(nested("weights.gate_v", &wt, &StateWeights::gate_v));
    t.push_back(nested("weights.acc_e", &wt, &StateWeights::acc_e));
    t.push_back(nested("weights.acc_stab", &wt, &StateWeights::acc_stab));
    t.push_back(nested("weights.acc_prox", &wt, &StateWeights::acc_prox));
    t.push_back(nested("weights.prox_scale", &wt, &StateWeights::prox_scale));
    t.push_back(nested("signal.window", &sg, &SignalParams::window));
    t.push_back({"signal.ema_alpha",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "none" || v.empty()) {
                     c.exec.signal.ema_alpha.reset();
                   } else {
                     c.exec.signal.ema_alpha = to_double("signal.ema_alpha", v);
                   }
                 },
                 [](const RunConfig& c) {
                   return c.exec.signal.ema_alpha ? show(*c.exec.signal.ema_alpha) : std::string("none");
                 }});
    t.push_back(nested("signal.sigma_norm", &sg, &SignalParams::sigma_norm));
    t.push_back(nested("signal.epsilon", &sg, &SignalParams::epsilon));
    t.push_back(nested("budget.floor", &caps, &BudgetCaps::floor));
    t.push_back(nested("budget.ceiling", &caps, &BudgetCaps::ceiling));
    t.push_back(real("perception.base", &RunConfig::perception, &PerceptionParams::base));
    t.push_back(real("perception.noise_std", &RunConfig::perception, &PerceptionParams::noise_std));
    t.push_back(real("perception.amplitude", &RunConfig::perception, &PerceptionParams::amplitude));
    t.push_back(real("perception.range", &RunConfig::perception, &PerceptionParams::range));
    t.push_back(real("perception.false_positive_rate", &RunConfig::perception,
                     &PerceptionParams::false_positive_rate));
    t.push_back(real("perception.detectability", &RunConfig::perception, &PerceptionParams::detectability));
    t.push_back(real("nav.sensor_range", &RunConfig::nav, &NavParams::sensor_range));
    t.push_back(integer("nav.approach_streak", &RunConfig::nav, &NavParams::approach_streak));
    t.push_back(nested("world.rooms_x", &mp, &MapParams::rooms_x));
    t.push_back(nested("world.rooms_y", &mp, &MapParams::rooms_y));
    t.push_back(nested("world.room_min", &mp, &MapParams::room_min));
    t.push_back(nested("world.room_max", &mp, &MapParams::room_max));
    t.push_back(nested("world.extra_door_prob", &mp, &MapParams::extra_door_prob));
    t.push_back(nested("world.door_width", &mp, &MapParams::door_width));
    t.push_back(nested("world.clutter", &mp, &MapParams::clutter));
    t.push_back(nested("world.cell_size", &mp, &MapParams::cell_size));
    t.push_back(integer("budget.k2", &RunConfig::suite, &SuiteParams::budget_k2));
    t.push_back(integer("budget.k3", &RunConfig::suite, &SuiteParams::budget_k3));
    t.push_back(real("bench.infeasible_fraction", &RunConfig::suite, &SuiteParams::infeasible_fraction));
    t.push_back(real("bench.sealed_share", &RunConfig::suite, &SuiteParams::sealed_share));
    t.push_back(real("bench.min_separation", &RunConfig::suite, &SuiteParams::min_separation));
    t.push_back(integer("bench.episodes_k2", &RunConfig::bench, &BenchParams::episodes_k2));
    t.push_back(integer("bench.episodes_k3", &RunConfig::bench, &BenchParams::episodes_k3));
    t.push_back(integer("bench.seed", &RunConfig::bench, &BenchParams::seed));
    t.push_back(real("bench.success_radius", &RunConfig::bench, &BenchParams::success_radius));
    t.push_back(real("bench.reward", &RunConfig::bench, &BenchParams::reward));
    t.push_back(real("bench.lambda", &RunConfig::bench, &BenchParams::lambda));
    return t;
  }();
  return table;
}

const KeyDef& find_key(std::string_view key) {
  for (const KeyDef& k : key_table()) {
    if (k.name == key) return k;
  }
  throw ConfigError(std::string(key), "unknown configuration key");
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const KeyDef& k : key_table()) out.push_back(k.name);
  return out;
}

void set_value(RunConfig& config, std::string_view key, std::string_view value) {
  find_key(key).set(config, trim(value));
}

std::string get_value(const RunConfig& config, std::string_view key) { return find_key(key).get(config); }

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(body, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    set_value(base, key, std::string_view(body).substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

namespace {

// Maps a std::invalid_argument message "key ..." back onto its key.
template <typename F>
void check(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto space = msg.find(' ');
    throw ConfigError(msg.substr(0, space), space == std::string::npos ? msg : msg.substr(space + 1));
  }
}

}  // namespace

std::vector<std::string> finalize(RunConfig& c) {
  std::vector<std::string> warnings;
  c.exec.signal.step_length = c.suite.map.cell_size;
  c.suite.detectability = c.perception.detectability;

  const Thresholds& t = c.exec.thresholds;
  check([&] { validate(t); });
  for (const auto& [key, v] : {std::pair{"thresholds.abort", t.abort_below},
                               std::pair{"thresholds.switch", t.switch_below},
                               std::pair{"thresholds.commit", t.commit_above}}) {
    if (v < 0.0 || v > 1.0) throw ConfigError(key, "must be in [0, 1]");
  }
  check([&] { validate(c.exec.weights); });
  check([&] { validate(c.exec.signal); });
  if (c.exec.caps.floor < 1) throw ConfigError("budget.floor", "must be >= 1");
  if (c.exec.caps.ceiling < c.exec.caps.floor) throw ConfigError("budget.ceiling", "must be >= budget.floor");
  check([&] { validate(c.perception); });
  check([&] { validate(c.nav); });
  check([&] { validate(c.suite); });
  if (c.bench.episodes_k2 < 0) throw ConfigError("bench.episodes_k2", "must be >= 0");
  if (c.bench.episodes_k3 < 0) throw ConfigError("bench.episodes_k3", "must be >= 0");
  if (!(c.bench.success_radius > 0.0)) throw ConfigError("bench.success_radius", "must be > 0");
  if (!(c.bench.lambda >= 0.0)) throw ConfigError("bench.lambda", "must be >= 0");

  // Constant baseline evidence on a goal with no reachable instance.
  const StateWeights& w = c.exec.weights;
  const double baseline = w.acc_e * c.perception.base + w.acc_stab;
  if (baseline >= t.commit_above) {
    warnings.push_back("calibration: sufficiency on a constant baseline stream is " + show(baseline) +
                       " >= thresholds.commit " + show(t.commit_above) +
                       "; commits are gated by thresholds.commit_distance alone");
  }
  return warnings;
}

std::string dump_config(const RunConfig& config) {
  std::string out;
  for (const KeyDef& k : key_table()) out += k.name + " = " + k.get(config) + "\n";
  return out;
}

std::string sweep_key(std::string_view name) {
  if (name == "tau_a") return "thresholds.abort";
  if (name == "tau_s") return "thresholds.switch";
  if (name == "tau_c") return "thresholds.commit";
  if (name == "d_commit") return "thresholds.commit_distance";
  if (name == "t_g") return "thresholds.grace";
  for (const KeyDef& k : key_table()) {
    if (k.name == name) return k.name;
  }
  throw ConfigError(std::string(name), "unknown sweep parameter");
}

}  // namespace morn
