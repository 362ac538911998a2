#include "morn/runner.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morn {

bool EpisodeTrace::all_found() const {
  return std::all_of(goals.begin(), goals.end(), [](const GoalOutcome& g) { return g.found; });
}

bool EpisodeTrace::found_in_order() const {
  if (!all_found() || completion_order.size() != goals.size()) return false;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (completion_order[i] != goals[i].id) return false;
  }
  return true;
}

StepOutcome episode_step(World& world, Executive& executive) {
  const GoalId goal = *executive.active_goal();
  const StepObservation obs = world.advance(goal);
  const SignalSample sample{.step = executive.ledger().elapsed + 1,
                            .distance = obs.distance,
                            .evidence = obs.reading.score};
  const ExecutiveStep step = executive.observe(sample, world.agent());
  StepOutcome out{.record = {.t = sample.step,
                             .goal = goal,
                             .pose = obs.pose,
                             .primitive = obs.action,
                             .mode = obs.mode,
                             .sample = sample,
                             .false_positive = obs.reading.false_positive,
                             .summary = step.summary,
                             .states = step.decision.states,
                             .action = step.decision.action,
                             .reason = step.decision.reason,
                             .next_goal = step.decision.next_goal,
                             .allocation = step.allocation,
                             .active_spent = step.active_spent}};
  out.terminated = executive.finished();
  return out;
}

EpisodeTrace run(const EpisodeSpec& spec, MethodVariant variant, const RunConfig& config,
                 const RunOptions& options) {
  World world(spec, config.perception, config.nav);
  ExecutiveConfig ec = config.exec;
  ec.variant = variant;
  std::vector<GoalId> order;
  for (const GoalInstance& g : spec.goals) order.push_back(g.goal_id);
  Executive executive(ec, order, world.goal_positions(), spec.budget_max, world.agent());

  EpisodeTrace trace{.episode_id = spec.episode_id,
                     .seed = spec.seed,
                     .goal_count = spec.goal_count,
                     .budget_max = spec.budget_max,
                     .source = spec.source,
                     .variant = variant,
                     .success_radius = config.bench.success_radius};
  for (const GoalInstance& g : spec.goals) {
    trace.goals.push_back(GoalOutcome{.id = g.goal_id,
                                      .category = g.category,
                                      .present = g.present,
                                      .reachable = world.distance(g.goal_id, spec.spawn) < kUnreachable});
  }
  auto outcome = [&](GoalId id) -> GoalOutcome& {
    return *std::find_if(trace.goals.begin(), trace.goals.end(), [id](const GoalOutcome& g) { return g.id == id; });
  };

  bool terminated = executive.finished();
  if (options.keep_steps) trace.steps.reserve(static_cast<std::size_t>(spec.budget_max));
  while (!terminated) {
    StepOutcome step = episode_step(world, executive);
    terminated = step.terminated;
    if (step.record.action == MetaAction::Commit) {
      GoalOutcome& g = outcome(step.record.goal);
      g.committed = true;
      g.commit_step = step.record.t;
      g.commit_distance = step.record.sample.distance;
      g.found = g.commit_distance <= config.bench.success_radius;
      if (g.found) trace.completion_order.push_back(g.id);
    }
    if (options.keep_steps) trace.steps.push_back(step.record);
  }

  trace.total_steps = executive.ledger().elapsed;
  for (const GoalStatus& s : executive.schedule().goals()) {
    GoalOutcome& g = outcome(s.id);
    g.state = s.state;
    g.steps_charged = s.spent;
    g.switch_count = s.switch_count;
    g.activations = s.activations;
    g.last_exit = s.last_exit;
  }
  if (options.on_trace) options.on_trace(spec, trace);
  return trace;
}

std::vector<EpisodeTrace> run_suite_serial(std::span<const EpisodeSpec> specs,
                                           std::span<const MethodVariant> variants,
                                           const RunConfig& config, const RunOptions& options) {
  std::vector<EpisodeTrace> out;
  out.reserve(specs.size() * variants.size());
  for (MethodVariant v : variants) {
    for (const EpisodeSpec& spec : specs) out.push_back(run(spec, v, config, options));
  }
  return out;
}

int available_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<EpisodeTrace> run_suite(std::span<const EpisodeSpec> specs,
                                    std::span<const MethodVariant> variants, const RunConfig& config,
                                    const RunOptions& options, int workers) {
  const long n = static_cast<long>(specs.size());
  const long jobs = n * static_cast<long>(variants.size());
  std::vector<EpisodeTrace> out(static_cast<std::size_t>(jobs));
  std::exception_ptr error;
  const int threads = workers > 0 ? workers : available_workers();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long j = 0; j < jobs; ++j) {
    try {
      out[static_cast<std::size_t>(j)] =
          run(specs[static_cast<std::size_t>(j % n)], variants[static_cast<std::size_t>(j / n)], config, options);
    } catch (...) {
#pragma omp critical(morn_suite_error)
      if (!error) error = std::current_exception();
    }
  }
  (void)threads;
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace morn
