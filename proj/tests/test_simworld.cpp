#include <doctest.h>

#include <cmath>
#include <limits>

#include "morn/config.hpp"
#include "morn/episode.hpp"
#include "morn/meta_state.hpp"
#include "morn/perception.hpp"
#include "morn/runner.hpp"
#include "morn/world.hpp"

using namespace morn;

namespace {

EpisodeSpec fixture(const std::string& name, std::uint64_t seed = 1) {
  RunConfig c;
  finalize(c);
  return load_fixture_episode(MORN_FIXTURE_DIR, name, seed, c.suite, c.perception);
}

GridMap open_room() {
  GridMap m(12, 12, 0.25);
  for (int y = 1; y < 11; ++y) {
    for (int x = 1; x < 11; ++x) m.set({x, y}, Occupancy::Free);
  }
  return m;
}

}  // namespace

TEST_CASE("absent goal without noise emits the baseline") {
  const GridMap m = open_room();
  PerceptionParams p;
  p.noise_std = 0.0;
  p.false_positive_rate = 0.0;
  const GoalInstance g{.goal_id = 1, .position = {5, 5}, .present = false};
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const EvidenceReading r = emit_evidence(g, {5, 6}, 0.25, m, p, rng);
    CHECK(r.score == p.base);
    CHECK_FALSE(r.detection);
  }
}

TEST_CASE("present goal at zero distance without noise") {
  const GridMap m = open_room();
  PerceptionParams p;
  p.noise_std = 0.0;
  const GoalInstance g{.goal_id = 1, .position = {5, 5}, .detectability = 1.0, .present = true};
  Rng rng(2);
  const EvidenceReading r = emit_evidence(g, {5, 5}, 0.0, m, p, rng);
  CHECK(r.score == doctest::Approx(clip(p.base + p.amplitude, 0, 1)).epsilon(1e-12));
  CHECK(r.detection);
  CHECK(r.source == Cell{5, 5});
}

TEST_CASE("evidence draws a fixed number of uniforms") {
  const GridMap m = open_room();
  const PerceptionParams p;
  const GoalInstance present{.goal_id = 1, .position = {5, 5}, .present = true};
  const GoalInstance absent{.goal_id = 2, .position = {5, 5}, .present = false};
  Rng a(3), b(3);
  emit_evidence(present, {5, 6}, 0.25, m, p, a);
  emit_evidence(absent, {5, 6}, 0.25, m, p, a);
  for (int i = 0; i < 8; ++i) b.uniform();
  CHECK(a.uniform() == b.uniform());
}

TEST_CASE("scores are clipped and walls block detection") {
  GridMap m = open_room();
  for (int y = 1; y < 11; ++y) m.set({6, y}, Occupancy::Wall);
  PerceptionParams p;
  p.noise_std = 0.5;
  p.false_positive_rate = 0.0;
  const GoalInstance g{.goal_id = 1, .position = {8, 5}, .detectability = 1.0, .present = true};
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const EvidenceReading r = emit_evidence(g, {3, 5}, 1.25, m, p, rng);
    CHECK(r.score >= 0.0);
    CHECK(r.score <= 1.0);
    CHECK_FALSE(r.detection);
  }
}

TEST_CASE("one-step spike drops stability but does not commit far from the goal") {
  const SignalParams sp;
  const StateWeights w;
  const Thresholds th;
  RollingWindow win(sp.window);
  const std::vector<double> stream = {0.1, 0.1, 0.1, 0.1, 0.1, 0.9, 0.1, 0.1, 0.1, 0.1};
  long t = 0;
  double baseline_stability = 0.0;
  for (double s : stream) {
    const SignalSample x{.step = ++t, .distance = std::numeric_limits<double>::infinity(), .evidence = s};
    const SignalSummary sum = update(win, x, sp);
    const MetaStateVector m = evaluate(sum, x, {.spent = t, .allocation = 250}, w);
    if (t == 5) baseline_stability = sum.stability;
    if (t == 6) {
      CHECK(sum.stability < baseline_stability);
      CHECK(sum.stability == 0.0);
    }
    const BudgetLedger l{.budget_max = 500, .elapsed = t, .allocation = 250, .active_spent = t};
    CHECK(decide(m, x.distance, l, th, MethodVariant::MornFull, 2).action != MetaAction::Commit);
  }
}

TEST_CASE("coverage grows to completion on an open map with an absent goal") {
  EpisodeSpec spec = fixture("open");
  spec.goals[0].present = false;
  RunConfig c;
  finalize(c);
  World world(spec, c.perception, c.nav);
  double prev = 0.0;
  for (int i = 0; i < 400; ++i) {
    world.advance(spec.goals[0].goal_id);
    const double cov = world.navigator().coverage(spec.goals[0].goal_id);
    CHECK(cov >= prev);
    prev = cov;
  }
  CHECK(prev == 1.0);
}

TEST_CASE("goal in the adjacent room is approached monotonically") {
  const EpisodeSpec spec = fixture("two_room", 3);
  RunConfig c;
  finalize(c);
  World world(spec, c.perception, c.nav);
  bool approaching = false;
  double last = std::numeric_limits<double>::infinity();
  int i = 0;
  for (; i < 400; ++i) {
    const StepObservation o = world.advance(1);
    if (!approaching && o.mode == NavMode::Approach) {
      approaching = true;
      last = o.distance;
      continue;
    }
    if (approaching) {
      CHECK(o.mode == NavMode::Approach);
      CHECK(o.distance <= last);
      last = o.distance;
      if (o.distance == 0.0) break;
    }
  }
  CHECK(approaching);
  CHECK(last == 0.0);
}

TEST_CASE("sealed goal is never within commit distance") {
  const EpisodeSpec spec = fixture("sealed_room");
  RunConfig c;
  finalize(c);
  World world(spec, c.perception, c.nav);
  for (int i = 0; i < 300; ++i) {
    const StepObservation o = world.advance(1);
    CHECK(o.distance == kUnreachable);
    CHECK_FALSE(o.reading.detection);
  }
}

TEST_CASE("navigator is blind to the executive until the first intervention") {
  const EpisodeSpec spec = fixture("maze", 9);
  RunConfig c;
  finalize(c);
  const EpisodeTrace trace = run(spec, MethodVariant::MornFull, c);
  World bare(spec, c.perception, c.nav);
  const GoalId first = trace.steps.front().goal;
  for (const StepRecord& s : trace.steps) {
    const StepObservation o = bare.advance(first);
    CHECK(o.pose == s.pose);
    CHECK(o.action == s.primitive);
    CHECK(o.reading.score == s.sample.evidence);
    if (s.action != MetaAction::Persist) break;
  }
}

TEST_CASE("episode_step appends one sample and respects the budget") {
  EpisodeSpec spec = fixture("sealed_room");
  spec.budget_max = 60;
  RunConfig c;
  finalize(c);
  const EpisodeTrace trace = run(spec, MethodVariant::FixedOrder, c);
  CHECK(trace.total_steps <= 60);
  CHECK(static_cast<long>(trace.steps.size()) == trace.total_steps);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) CHECK(trace.steps[i].t == static_cast<long>(i) + 1);
  long charged = 0;
  for (const GoalOutcome& g : trace.goals) charged += g.steps_charged;
  CHECK(charged == trace.total_steps);
}

TEST_CASE("fixture directives") {
  const EpisodeSpec spec = fixture("absent_spike");
  CHECK_FALSE(spec.goals[0].present);
  CHECK(spec.goals[1].present);
  REQUIRE(spec.perception.has_value());
  CHECK(spec.perception->false_positive_rate == 0.3);
  RunConfig c;
  finalize(c);
  CHECK_THROWS_AS(fixture_episode(parse_fixture("@bogus 1\n#####\n#S.1#\n#####\n", 0.25), "x", 1, c.suite,
                                  c.perception),
                  std::invalid_argument);
  CHECK_THROWS_AS(fixture_episode(parse_fixture("@absent 4\n#####\n#S.1#\n#####\n", 0.25), "x", 1, c.suite,
                                  c.perception),
                  std::invalid_argument);
}
