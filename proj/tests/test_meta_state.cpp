#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "morn/meta_state.hpp"

using namespace morn;

// Reference values evaluated in 50-digit arithmetic.
constexpr double kSig1 = 0.7310585786300049;
constexpr double kSigM04 = 0.401312339887548;
constexpr double kSigM03 = 0.425557483188341;
constexpr double kSig005 = 0.5124973964842103;
constexpr double kInvE = 0.36787944117144233;
constexpr double kSuff = 0.6603638323514327;

TEST_CASE("sigmoid") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(std::abs(sigmoid(1.0) - kSig1) <= 1e-9);
  CHECK(sigmoid(40.0) == doctest::Approx(1.0));
  CHECK(sigmoid(-800.0) >= 0.0);
  CHECK(std::isfinite(sigmoid(-800.0)));
}

TEST_CASE("potentiality") {
  const StateWeights w;
  CHECK(potentiality(0, 0, 0, w) == 0.5);
  CHECK(std::abs(potentiality(1, 1, 1, w) - kSig1) <= 1e-9);
  CHECK(std::abs(potentiality(-1, 0, 0, w) - kSigM04) <= 1e-9);
  CHECK(potentiality(0.5, 0.2, 0.1, w) <= potentiality(0.6, 0.2, 0.1, w));
  CHECK(potentiality(0.5, 0.2, 0.1, w) <= potentiality(0.5, 0.3, 0.1, w));
  CHECK(potentiality(0.5, 0.2, 0.1, w) <= potentiality(0.5, 0.2, 0.2, w));
}

TEST_CASE("persistence gate") {
  const StateWeights w;
  CHECK(std::abs(persistence_gate(0.0, {.spent = 100, .allocation = 100}, 0.0, w) - kSigM03) <= 1e-9);
  CHECK(persistence_gate(0.0, {.spent = 0, .allocation = 100}, 0.0, w) == 0.5);
  CHECK(std::abs(persistence_gate(0.2, {.spent = 50, .allocation = 100}, 0.5, w) - kSig005) <= 1e-9);
  CHECK_THROWS_AS(persistence_gate(0.0, {.spent = 1, .allocation = 0}, 0.0, w), std::invalid_argument);
  double prev = 1.0;
  for (long spent = 0; spent <= 300; spent += 10) {
    const double g = persistence_gate(0.01, {.spent = spent, .allocation = 250}, 0.1, w);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("proximity") {
  const StateWeights w;
  CHECK(proximity(0.0, w) == 1.0);
  CHECK(std::abs(proximity(5.0, w) - kInvE) <= 1e-9);
  CHECK(proximity(std::numeric_limits<double>::infinity(), w) == 0.0);
  CHECK_THROWS_AS(proximity(-0.1, w), std::invalid_argument);
}

TEST_CASE("sufficiency") {
  const StateWeights w;
  CHECK(std::abs(sufficiency(1, 1, 0, w) - 1.0) <= 1e-9);
  CHECK(sufficiency(0, 0, std::numeric_limits<double>::infinity(), w) == 0.0);
  CHECK(std::abs(sufficiency(0.5, 1.0, 5.0, w) - kSuff) <= 1e-9);
}

TEST_CASE("weight validation") {
  StateWeights w;
  CHECK_NOTHROW(validate(w));
  w.acc_e = 0.5;
  CHECK_THROWS_AS(validate(w), std::invalid_argument);
  w = {};
  w.prox_scale = 0.0;
  CHECK_THROWS_AS(validate(w), std::invalid_argument);
}

TEST_CASE("evaluate wires summary and sample") {
  const StateWeights w;
  const SignalSummary s{.stability = 0.5, .velocity = 0.25, .info_gain = 0.01};
  const SignalSample x{.step = 1, .distance = 2.0, .evidence = 0.4};
  const MetaStateVector m = evaluate(s, x, {.spent = 10, .allocation = 100}, w);
  CHECK(m.potentiality == potentiality(0.25, 0.4, 0.5, w));
  CHECK(m.persistence == persistence_gate(0.01, {.spent = 10, .allocation = 100}, 0.25, w));
  CHECK(m.sufficiency == sufficiency(0.4, 0.5, 2.0, w));
}
