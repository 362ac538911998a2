#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "morn/geometry.hpp"
#include "morn/meta_state.hpp"
#include "morn/signal_core.hpp"

namespace morn {

using GoalId = int;

enum class MetaAction { Persist, Switch, Abort, Commit };

enum class DecisionReason {
  Grace,
  LowPotentiality,
  GateClosed,
  EvidenceCommit,
  SubgoalCap,
  Default,
};

enum class GoalState { Pending, Active, Completed, Failed };

enum class MethodVariant { FixedOrder, ReactiveOrder, MornAbortOnly, MornSwitchOnly, MornFull };

inline constexpr MethodVariant kAllVariants[] = {
    MethodVariant::FixedOrder, MethodVariant::ReactiveOrder, MethodVariant::MornAbortOnly,
    MethodVariant::MornSwitchOnly, MethodVariant::MornFull};

std::string_view to_string(MetaAction action);
std::string_view to_string(DecisionReason reason);
std::string_view to_string(GoalState state);
std::string_view to_string(MethodVariant variant);
std::optional<MethodVariant> parse_variant(std::string_view name);

struct Thresholds {
  double abort_below = 0.30;     // potentiality
  double switch_below = 0.20;    // persistence gate
  double commit_above = 0.300;   // sufficiency
  double commit_distance = 3.0;  // metres
  long grace_steps = 20;
};

void validate(const Thresholds& thresholds);

// Which executive branches a variant may take. The per-goal cap and the
// commit rule are shared by every variant.
struct BranchMask {
  bool abort = false;
  bool gate_switch = false;
};

BranchMask branch_mask(MethodVariant variant);
bool uses_prescribed_order(MethodVariant variant);

struct GoalStatus {
  GoalId id = 0;
  GoalState state = GoalState::Pending;
  long spent = 0;
  int switch_count = 0;
  int activations = 0;
  std::optional<DecisionReason> last_exit;
};

struct BudgetLedger {
  long budget_max = 0;
  long elapsed = 0;
  long allocation = 0;
  long active_spent = 0;
};

// Bounds on the per-goal allocation.
struct BudgetCaps {
  long floor = 50;
  long ceiling = 300;
};

// min(ceiling, max(floor((budget_max - elapsed) / remaining), floor)).
// Throws std::invalid_argument when remaining_goals < 1.
long allocate(const BudgetLedger& ledger, int remaining_goals, const BudgetCaps& caps = {});

struct ExecutiveDecision {
  MetaAction action = MetaAction::Persist;
  std::optional<GoalId> next_goal;
  MetaStateVector states;
  DecisionReason reason = DecisionReason::Default;
};

// Per-step meta-action. Abort is checked first, then the gate switch, then
// commit; grace covers abort and switch only. When nothing fires and the
// active goal has used its allocation the cap forces a switch, or an abort
// when it is the last remaining goal.
ExecutiveDecision decide(const MetaStateVector& states, double distance, const BudgetLedger& ledger,
                         const Thresholds& thresholds, MethodVariant variant, int remaining_goals);

// Greedy nearest remaining goal by straight-line distance; ties go to the
// lowest id. Throws std::invalid_argument on an empty set or unknown id.
GoalId select_next(std::span<const GoalId> remaining, Point2 agent,
                   const std::map<GoalId, Point2>& goal_positions);

// Goal statuses plus the prescribed order.
class MissionSchedule {
 public:
  explicit MissionSchedule(std::vector<GoalId> prescribed_order);

  const std::vector<GoalId>& order() const { return order_; }
  const std::vector<GoalStatus>& goals() const { return goals_; }
  GoalStatus& status(GoalId id);
  const GoalStatus& status(GoalId id) const;

  std::optional<GoalId> active() const { return active_; }
  // Pending goals in prescribed order.
  std::vector<GoalId> pending() const;
  // Pending plus active.
  int remaining() const;
  bool done() const { return remaining() == 0; }

  void activate(GoalId id);
  // Ends the active stint. Completed and Failed are terminal.
  void close_active(GoalState new_state, DecisionReason reason);

 private:
  std::vector<GoalId> order_;
  std::vector<GoalStatus> goals_;
  std::optional<GoalId> active_;
};

// Chooses the next goal after the active one has been closed. For switches
// the goal just left is skipped when another candidate exists.
GoalId choose_next(const MissionSchedule& schedule, MethodVariant variant, Point2 agent,
                   const std::map<GoalId, Point2>& goal_positions,
                   std::optional<GoalId> leaving, bool leaving_by_switch);

// Applies a decision to the schedule and ledger. Non-persist actions close
// the active goal, activate the next one and recompute the allocation; the
// caller resets the signal window.
void apply(ExecutiveDecision& decision, MissionSchedule& schedule, BudgetLedger& ledger,
           MethodVariant variant, Point2 agent, const std::map<GoalId, Point2>& goal_positions,
           const BudgetCaps& caps = {});

struct ExecutiveConfig {
  Thresholds thresholds;
  StateWeights weights;
  SignalParams signal;
  BudgetCaps caps;
  MethodVariant variant = MethodVariant::MornFull;
};

// What the executive saw and did on one step.
struct ExecutiveStep {
  GoalId goal = 0;
  SignalSummary summary;
  ExecutiveDecision decision;
  long allocation = 0;
  long active_spent = 0;
};

// System-2 controller for one episode: charges steps, maintains the signal
// window, evaluates the meta-states and regulates the schedule.
class Executive {
 public:
  Executive(ExecutiveConfig config, std::vector<GoalId> prescribed_order,
            std::map<GoalId, Point2> goal_positions, long budget_max, Point2 start);

  bool finished() const;
  std::optional<GoalId> active_goal() const { return schedule_.active(); }

  // One primitive step has been taken on the active goal and produced
  // `sample`; `agent` is the agent position after the step.
  ExecutiveStep observe(const SignalSample& sample, Point2 agent);

  const MissionSchedule& schedule() const { return schedule_; }
  const BudgetLedger& ledger() const { return ledger_; }
  const RollingWindow& window() const { return window_; }
  const ExecutiveConfig& config() const { return config_; }

 private:
  ExecutiveConfig config_;
  MissionSchedule schedule_;
  std::map<GoalId, Point2> positions_;
  BudgetLedger ledger_;
  RollingWindow window_;
};

}  // namespace morn
