#include <doctest.h>

#include "morn/config.hpp"

using namespace morn;

TEST_CASE("defaults match the controller table") {
  RunConfig c;
  const auto warnings = finalize(c);
  CHECK(c.exec.signal.window == 5);
  CHECK_FALSE(c.exec.signal.ema_alpha.has_value());
  CHECK(c.exec.thresholds.grace_steps == 20);
  CHECK(c.exec.thresholds.abort_below == 0.30);
  CHECK(c.exec.thresholds.switch_below == 0.20);
  CHECK(c.exec.thresholds.commit_above == 0.300);
  CHECK(c.exec.thresholds.commit_distance == 3.0);
  CHECK(c.exec.caps.ceiling == 300);
  CHECK(c.suite.budget_k2 == 500);
  CHECK(c.suite.budget_k3 == 650);
  CHECK(c.bench.episodes_k2 == 300);
  CHECK(c.bench.episodes_k3 == 200);
  CHECK(c.exec.signal.step_length == c.suite.map.cell_size);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("calibration") != std::string::npos);
}

TEST_CASE("parse and dump round-trip") {
  RunConfig c = parse_config("# comment\nthresholds.abort = 0.45  # trailing\n\nsignal.ema_alpha = 0.3\nbench.seed=99\n");
  CHECK(c.exec.thresholds.abort_below == 0.45);
  CHECK(c.exec.signal.ema_alpha == 0.3);
  CHECK(c.bench.seed == 99);
  const RunConfig d = parse_config(dump_config(c));
  CHECK(dump_config(d) == dump_config(c));
  CHECK(config_keys().size() > 40);
}

TEST_CASE("errors name the key") {
  try {
    parse_config("thresholds.abortt = 0.3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "thresholds.abortt");
  }
  try {
    parse_config("thresholds.grace = twenty\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "thresholds.grace");
  }
  CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);

  RunConfig c = parse_config("weights.acc_e = 0.5\n");
  try {
    finalize(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "weights.acc_e");
  }
  RunConfig t = parse_config("thresholds.commit = 1.5\n");
  CHECK_THROWS_AS(finalize(t), ConfigError);
  RunConfig w = parse_config("signal.window = 1\n");
  try {
    finalize(w);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "signal.window");
  }
  CHECK_THROWS_AS(load_config("/nonexistent/morn.cfg"), ConfigError);
}

TEST_CASE("calibrated configs load without warnings") {
  RunConfig c = parse_config("weights.acc_e = 0.5\nweights.acc_stab = 0.2\nweights.acc_prox = 0.3\n"
                             "perception.base = 0.1\nthresholds.commit = 0.4\n");
  CHECK(finalize(c).empty());
}

TEST_CASE("sweep names") {
  CHECK(sweep_key("tau_a") == "thresholds.abort");
  CHECK(sweep_key("tau_s") == "thresholds.switch");
  CHECK(sweep_key("tau_c") == "thresholds.commit");
  CHECK(sweep_key("d_commit") == "thresholds.commit_distance");
  CHECK(sweep_key("t_g") == "thresholds.grace");
  CHECK(sweep_key("perception.noise_std") == "perception.noise_std");
  CHECK_THROWS_AS(sweep_key("tau_z"), ConfigError);
}
