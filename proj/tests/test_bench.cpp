#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "morn/config.hpp"
#include "morn/episode.hpp"
#include "morn/metrics.hpp"
#include "morn/report.hpp"
#include "morn/runner.hpp"

using namespace morn;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.suite.map.rooms_x = 3;
  c.suite.map.rooms_y = 3;
  c.suite.map.room_min = 10;
  c.suite.map.room_max = 14;
  finalize(c);
  return c;
}

EpisodeTrace synthetic(int k, std::vector<std::pair<bool, long>> goals) {
  EpisodeTrace t{.goal_count = k, .budget_max = 500};
  GoalId id = 1;
  for (const auto& [found, steps] : goals) {
    t.goals.push_back(GoalOutcome{.id = id, .steps_charged = steps, .committed = found, .found = found});
    if (found) t.completion_order.push_back(id);
    t.total_steps += steps;
    ++id;
  }
  return t;
}

}  // namespace

TEST_CASE("generate composition") {
  const RunConfig c = small_config();
  const auto specs = generate(30, 20, 123, c.suite);
  REQUIRE(specs.size() == 50);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CHECK(specs[i].episode_id == static_cast<int>(i));
    CHECK(specs[i].goal_count == (i < 30 ? 2 : 3));
    CHECK(specs[i].budget_max == (i < 30 ? 500 : 650));
    CHECK(static_cast<int>(specs[i].goals.size()) == specs[i].goal_count);
  }
  CHECK(generate(0, 0, 123, c.suite).empty());
  CHECK(generate(30, 20, 123, c.suite) == specs);
  CHECK_FALSE(generate(30, 20, 124, c.suite) == specs);
  CHECK_THROWS_AS(generate(-1, 0, 1, c.suite), std::invalid_argument);
}

TEST_CASE("generated goals respect separation and feasibility") {
  const RunConfig c = small_config();
  const auto specs = generate(120, 80, 5, c.suite);
  int goals = 0, infeasible = 0;
  for (const EpisodeSpec& s : specs) {
    const auto from_spawn = step_field(s.map, s.spawn);
    for (std::size_t a = 0; a < s.goals.size(); ++a) {
      ++goals;
      const bool reachable = from_spawn[s.map.index(s.goals[a].position)] >= 0;
      if (!s.goals[a].present || !reachable) ++infeasible;
      for (std::size_t b = a + 1; b < s.goals.size(); ++b) {
        const double d = geodesic_distance(s.map, s.goals[a].position, s.goals[b].position);
        const double e = euclidean(s.map.center(s.goals[a].position), s.map.center(s.goals[b].position));
        CHECK((d == kUnreachable ? e : d) >= s.min_separation);
      }
    }
  }
  const double frac = static_cast<double>(infeasible) / goals;
  CHECK(frac > 0.14);
  CHECK(frac < 0.26);
}

TEST_CASE("metrics hand example") {
  const std::vector<EpisodeTrace> one = {synthetic(2, {{true, 100}, {false, 400}})};
  const MetricsReport r = compute_metrics(one);
  CHECK(r.cr == doctest::Approx(0.5));
  CHECK(r.mgsr == 0.0);
  CHECK(r.wsf == doctest::Approx(0.8));
  CHECK(r.mean_steps == doctest::Approx(500));
  CHECK(r.failure_counts.at(FailureKind::NoDetection) == 1);

  const std::vector<EpisodeTrace> all = {synthetic(2, {{true, 10}, {true, 20}}), synthetic(3, {{true, 5}, {true, 5}, {true, 5}})};
  const MetricsReport a = compute_metrics(all);
  CHECK(a.mgsr == 1.0);
  CHECK(a.ssr == 1.0);
  CHECK(a.wsf == 0.0);
  for (const auto& [kind, n] : a.failure_counts) CHECK(n == 0);

  const std::vector<EpisodeTrace> none = {synthetic(2, {{false, 250}, {false, 250}})};
  const MetricsReport z = compute_metrics(none);
  CHECK(z.cr == 0.0);
  CHECK(z.wsf == 1.0);

  const MetricsReport j = compute_metrics(one, 2.0, 0.001);
  CHECK(j.utility_mean == doctest::Approx(2.0 - 0.5));
  CHECK_THROWS_AS(compute_metrics(std::vector<EpisodeTrace>{}), std::invalid_argument);
}

TEST_CASE("failure tags") {
  GoalOutcome g{.found = false};
  CHECK(classify(g) == FailureKind::NoDetection);
  g.last_exit = DecisionReason::LowPotentiality;
  CHECK(classify(g) == FailureKind::Aborted);
  g.last_exit = DecisionReason::GateClosed;
  CHECK(classify(g) == FailureKind::SwitchedUnresolved);
  g.last_exit = DecisionReason::SubgoalCap;
  CHECK(classify(g) == FailureKind::NoDetection);
  g.committed = true;
  CHECK(classify(g) == FailureKind::FalseCommit);
  g.found = true;
  CHECK_FALSE(classify(g).has_value());
}

TEST_CASE("out-of-order completion does not count towards SSR") {
  EpisodeTrace t = synthetic(2, {{true, 10}, {true, 10}});
  std::reverse(t.completion_order.begin(), t.completion_order.end());
  const std::vector<EpisodeTrace> v = {t};
  CHECK(compute_metrics(v).mgsr == 1.0);
  CHECK(compute_metrics(v).ssr == 0.0);
}

TEST_CASE("suite metrics are consistent and order independent") {
  const RunConfig c = small_config();
  const auto specs = generate(12, 8, 77, c.suite);
  const MethodVariant variants[] = {MethodVariant::FixedOrder, MethodVariant::MornFull};
  const auto traces = run_suite_serial(specs, variants, c, RunOptions{.keep_steps = false});
  for (MethodVariant v : variants) {
    auto subset = select(traces, v);
    const MetricsReport r = compute_metrics(subset);
    CHECK(r.mgsr <= r.cr);
    CHECK(r.wsf >= 0.0);
    CHECK(r.wsf <= 1.0);
    double cr = 0.0;
    int failed = 0;
    for (const EpisodeTrace& t : subset) {
      CHECK(t.total_steps <= t.budget_max);
      int found = 0;
      for (const GoalOutcome& g : t.goals) {
        found += g.found;
        failed += !g.found;
      }
      cr += static_cast<double>(found) / t.goal_count;
    }
    CHECK(r.cr == doctest::Approx(cr / subset.size()).epsilon(1e-12));
    int tagged = 0;
    for (const auto& [kind, n] : r.failure_counts) tagged += n;
    CHECK(tagged == failed);

    std::mt19937 gen(4);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(subset.begin(), subset.end(), gen);
      const MetricsReport s = compute_metrics(subset);
      CHECK(s.cr == r.cr);
      CHECK(s.wsf == r.wsf);
      CHECK(s.mean_steps == r.mean_steps);
      CHECK(s.utility_mean == r.utility_mean);
    }
  }
}

TEST_CASE("parallel runner matches the serial reference") {
  const RunConfig c = small_config();
  const auto specs = generate(9, 6, 31, c.suite);
  const std::vector<MethodVariant> variants(std::begin(kAllVariants), std::end(kAllVariants));
  const auto serial = run_suite_serial(specs, variants, c);
  for (int workers : {1, 3}) {
    const auto parallel = run_suite(specs, variants, c, {}, workers);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(parallel[i].episode_id == serial[i].episode_id);
      CHECK(parallel[i].variant == serial[i].variant);
      const EpisodeSpec& spec = specs[i % specs.size()];
      CHECK(trace_jsonl(spec, parallel[i]) == trace_jsonl(spec, serial[i]));
    }
    CHECK(bench_csv(parallel, variants, 1.0, 0.0) == bench_csv(serial, variants, 1.0, 0.0));
  }
}

TEST_CASE("fixture episodes") {
  RunConfig c;
  finalize(c);
  const EpisodeSpec trivial = load_fixture_episode(MORN_FIXTURE_DIR, "trivial", 1, c.suite, c.perception);
  for (MethodVariant v : kAllVariants) {
    const EpisodeTrace t = run(trivial, v, c);
    CHECK(t.all_found());
  }
  const EpisodeSpec sealed = load_fixture_episode(MORN_FIXTURE_DIR, "sealed_room", 1, c.suite, c.perception);
  const EpisodeTrace fo = run(sealed, MethodVariant::FixedOrder, c);
  const auto first_exit = std::find_if(fo.steps.begin(), fo.steps.end(), [](const StepRecord& s) {
    return s.goal == 1 && s.action != MetaAction::Persist;
  });
  REQUIRE(first_exit != fo.steps.end());
  CHECK(first_exit->reason == DecisionReason::SubgoalCap);
  CHECK(first_exit->active_spent == 250);
  CHECK(first_exit->allocation == 250);
  CHECK(fo.goals[0].steps_charged == 499);
  CHECK(fo.goals[0].last_exit == DecisionReason::SubgoalCap);
  const std::vector<EpisodeTrace> v = {fo};
  CHECK(decompose_failures(v).at(FailureKind::NoDetection) == 1);
  CHECK(trace_jsonl(sealed, run(sealed, MethodVariant::MornFull, c)) ==
        trace_jsonl(sealed, run(sealed, MethodVariant::MornFull, c)));
}

TEST_CASE("sweep") {
  const RunConfig c = small_config();
  const auto specs = generate(6, 4, 8, c.suite);
  const MethodVariant v[] = {MethodVariant::MornFull};
  const std::vector<std::string> six = {"0.2", "0.3", "0.4", "0.5", "0.6", "0.7"};
  const auto points = sweep(specs, v, c, "tau_c", six, 1);
  CHECK(points.size() == 6);
  CHECK(points[0].parameter == "thresholds.commit");

  const std::vector<std::string> single = {"0.3"};
  const auto one = sweep(specs, v, c, "tau_c", single, 1);
  const auto direct = run_suite_serial(specs, v, c, RunOptions{.keep_steps = false});
  const MetricsReport r = compute_metrics(direct);
  CHECK(one[0].report.cr == r.cr);
  CHECK(one[0].report.wsf == r.wsf);
  CHECK(one[0].report.mean_steps == r.mean_steps);

  const std::vector<std::string> zero = {"0"};
  CHECK_NOTHROW(sweep(specs, v, c, "t_g", zero, 1));
  CHECK_THROWS_AS(sweep(specs, v, c, "tau_x", single, 1), ConfigError);
  CHECK_THROWS_AS(sweep(specs, v, c, "tau_c", std::vector<std::string>{}, 1), ConfigError);
  const std::vector<std::string> bad = {"abc"};
  CHECK_THROWS_AS(sweep(specs, v, c, "tau_c", bad, 1), ConfigError);
}
