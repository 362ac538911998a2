#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morn/config.hpp"
#include "morn/episode.hpp"
#include "morn/executive.hpp"
#include "morn/world.hpp"

namespace morn {

struct StepRecord {
  long t = 0;
  GoalId goal = 0;
  Cell pose;
  PrimitiveAction primitive = PrimitiveAction::Stay;
  NavMode mode = NavMode::Explore;
  SignalSample sample;
  bool false_positive = false;
  SignalSummary summary;
  MetaStateVector states;
  MetaAction action = MetaAction::Persist;
  DecisionReason reason = DecisionReason::Default;
  std::optional<GoalId> next_goal;
  long allocation = 0;
  long active_spent = 0;
};

struct GoalOutcome {
  GoalId id = 0;
  std::string category;
  bool present = true;
  bool reachable = true;
  GoalState state = GoalState::Pending;
  long steps_charged = 0;
  int switch_count = 0;
  int activations = 0;
  std::optional<DecisionReason> last_exit;
  bool committed = false;
  long commit_step = 0;
  double commit_distance = 0.0;
  bool found = false;
};

struct EpisodeTrace {
  int episode_id = 0;
  std::uint64_t seed = 0;
  int goal_count = 0;
  long budget_max = 0;
  std::string source;
  MethodVariant variant = MethodVariant::MornFull;
  std::vector<StepRecord> steps;  // empty unless kept
  std::vector<GoalOutcome> goals;  // prescribed order
  std::vector<GoalId> completion_order;
  long total_steps = 0;
  double success_radius = 0.0;
  std::optional<std::uint64_t> digest;

  bool all_found() const;
  bool found_in_order() const;
};

struct StepOutcome {
  StepRecord record;
  bool terminated = false;
};

// Advances the navigator on the active goal, feeds the reading to the
// executive and reports whether the episode is over.
StepOutcome episode_step(World& world, Executive& executive);

struct RunOptions {
  bool keep_steps = true;
  // Called once per finished trace, possibly from several threads at once.
  std::function<void(const EpisodeSpec&, EpisodeTrace&)> on_trace;
};

EpisodeTrace run(const EpisodeSpec& spec, MethodVariant variant, const RunConfig& config,
                 const RunOptions& options = {});

// Results are ordered variant-major, then by episode position in `specs`.
std::vector<EpisodeTrace> run_suite_serial(std::span<const EpisodeSpec> specs,
                                           std::span<const MethodVariant> variants,
                                           const RunConfig& config, const RunOptions& options = {});

// OpenMP over episodes; same result order as run_suite_serial. workers <= 0
// uses every available thread.
std::vector<EpisodeTrace> run_suite(std::span<const EpisodeSpec> specs,
                                    std::span<const MethodVariant> variants, const RunConfig& config,
                                    const RunOptions& options = {}, int workers = 0);

int available_workers();

}  // namespace morn
