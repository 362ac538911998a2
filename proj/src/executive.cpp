#include "morn/executive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace morn {

std::string_view to_string(MetaAction action) {
  switch (action) {
    case MetaAction::Persist: return "PERSIST";
    case MetaAction::Switch: return "SWITCH";
    case MetaAction::Abort: return "ABORT";
    case MetaAction::Commit: return "COMMIT";
  }
  return "?";
}

std::string_view to_string(DecisionReason reason) {
  switch (reason) {
    case DecisionReason::Grace: return "GRACE";
    case DecisionReason::LowPotentiality: return "LOW_POTENTIALITY";
    case DecisionReason::GateClosed: return "GATE_CLOSED";
    case DecisionReason::EvidenceCommit: return "EVIDENCE_COMMIT";
    case DecisionReason::SubgoalCap: return "SUBGOAL_CAP";
    case DecisionReason::Default: return "DEFAULT";
  }
  return "?";
}

std::string_view to_string(GoalState state) {
  switch (state) {
    case GoalState::Pending: return "PENDING";
    case GoalState::Active: return "ACTIVE";
    case GoalState::Completed: return "COMPLETED";
    case GoalState::Failed: return "FAILED";
  }
  return "?";
}

std::string_view to_string(MethodVariant variant) {
  switch (variant) {
    case MethodVariant::FixedOrder: return "FIXED_ORDER";
    case MethodVariant::ReactiveOrder: return "REACTIVE_ORDER";
    case MethodVariant::MornAbortOnly: return "MORN_ABORT_ONLY";
    case MethodVariant::MornSwitchOnly: return "MORN_SWITCH_ONLY";
    case MethodVariant::MornFull: return "MORN_FULL";
  }
  return "?";
}

std::optional<MethodVariant> parse_variant(std::string_view name) {
  for (MethodVariant v : kAllVariants) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

void validate(const Thresholds& t) {
  if (!std::isfinite(t.abort_below) || !std::isfinite(t.switch_below) ||
      !std::isfinite(t.commit_above) || !std::isfinite(t.commit_distance)) {
    throw std::invalid_argument("thresholds must be finite");
  }
  if (!(t.commit_distance > 0.0)) throw std::invalid_argument("thresholds.commit_distance must be > 0");
  if (t.grace_steps < 0) throw std::invalid_argument("thresholds.grace must be >= 0");
}

BranchMask branch_mask(MethodVariant variant) {
  switch (variant) {
    case MethodVariant::FixedOrder:
    case MethodVariant::ReactiveOrder: return {.abort = false, .gate_switch = false};
    case MethodVariant::MornAbortOnly: return {.abort = true, .gate_switch = false};
    case MethodVariant::MornSwitchOnly: return {.abort = false, .gate_switch = true};
    case MethodVariant::MornFull: return {.abort = true, .gate_switch = true};
  }
  return {};
}

bool uses_prescribed_order(MethodVariant variant) { return variant == MethodVariant::FixedOrder; }

long allocate(const BudgetLedger& ledger, int remaining_goals, const BudgetCaps& caps) {
  if (remaining_goals < 1) throw std::invalid_argument("allocate: no remaining goals");
  const long left = std::max(0L, ledger.budget_max - ledger.elapsed);
  return std::min(caps.ceiling, std::max(left / remaining_goals, caps.floor));
}

ExecutiveDecision decide(const MetaStateVector& states, double distance, const BudgetLedger& ledger,
                         const Thresholds& thresholds, MethodVariant variant, int remaining_goals) {
  const BranchMask mask = branch_mask(variant);
  const bool in_grace = ledger.active_spent < thresholds.grace_steps;
  const bool wants_abort = mask.abort && states.potentiality < thresholds.abort_below;
  const bool wants_switch = mask.gate_switch && states.persistence < thresholds.switch_below;

  ExecutiveDecision out{.states = states};
  if (!in_grace && wants_abort) {
    out.action = MetaAction::Abort;
    out.reason = DecisionReason::LowPotentiality;
  } else if (!in_grace && wants_switch) {
    out.action = MetaAction::Switch;
    out.reason = DecisionReason::GateClosed;
  } else if (states.sufficiency > thresholds.commit_above && distance < thresholds.commit_distance) {
    out.action = MetaAction::Commit;
    out.reason = DecisionReason::EvidenceCommit;
  } else if (ledger.active_spent >= ledger.allocation) {
    out.action = remaining_goals > 1 ? MetaAction::Switch : MetaAction::Abort;
    out.reason = DecisionReason::SubgoalCap;
  } else {
    out.reason = in_grace && (wants_abort || wants_switch) ? DecisionReason::Grace
                                                           : DecisionReason::Default;
  }
  return out;
}

GoalId select_next(std::span<const GoalId> remaining, Point2 agent,
                   const std::map<GoalId, Point2>& goal_positions) {
  if (remaining.empty()) throw std::invalid_argument("select_next: empty goal set");
  std::optional<GoalId> best;
  double best_dist = 0.0;
  for (GoalId id : remaining) {
    const auto it = goal_positions.find(id);
    if (it == goal_positions.end()) {
      throw std::invalid_argument("select_next: no position for goal " + std::to_string(id));
    }
    const double d = euclidean(agent, it->second);
    if (!best || d < best_dist || (d == best_dist && id < *best)) {
      best = id;
      best_dist = d;
    }
  }
  return *best;
}

MissionSchedule::MissionSchedule(std::vector<GoalId> prescribed_order)
    : order_(std::move(prescribed_order)) {
  if (order_.empty()) throw std::invalid_argument("MissionSchedule: no goals");
  for (GoalId id : order_) {
    if (std::count(order_.begin(), order_.end(), id) != 1) {
      throw std::invalid_argument("MissionSchedule: duplicate goal id " + std::to_string(id));
    }
    goals_.push_back(GoalStatus{.id = id});
  }
}

GoalStatus& MissionSchedule::status(GoalId id) {
  return const_cast<GoalStatus&>(std::as_const(*this).status(id));
}

const GoalStatus& MissionSchedule::status(GoalId id) const {
  for (const GoalStatus& g : goals_) {
    if (g.id == id) return g;
  }
  throw std::invalid_argument("MissionSchedule: unknown goal " + std::to_string(id));
}

std::vector<GoalId> MissionSchedule::pending() const {
  std::vector<GoalId> out;
  for (GoalId id : order_) {
    if (status(id).state == GoalState::Pending) out.push_back(id);
  }
  return out;
}

int MissionSchedule::remaining() const {
  return static_cast<int>(std::count_if(goals_.begin(), goals_.end(), [](const GoalStatus& g) {
    return g.state == GoalState::Pending || g.state == GoalState::Active;
  }));
}

void MissionSchedule::activate(GoalId id) {
  if (active_) throw std::logic_error("MissionSchedule: a goal is already active");
  GoalStatus& g = status(id);
  if (g.state != GoalState::Pending) {
    throw std::logic_error("MissionSchedule: goal " + std::to_string(id) + " is not pending");
  }
  g.state = GoalState::Active;
  ++g.activations;
  active_ = id;
}

void MissionSchedule::close_active(GoalState new_state, DecisionReason reason) {
  if (!active_) throw std::logic_error("MissionSchedule: no active goal");
  if (new_state == GoalState::Active) throw std::logic_error("MissionSchedule: invalid close");
  GoalStatus& g = status(*active_);
  g.state = new_state;
  g.last_exit = reason;
  if (new_state == GoalState::Pending) ++g.switch_count;
  active_.reset();
}

GoalId choose_next(const MissionSchedule& schedule, MethodVariant variant, Point2 agent,
                   const std::map<GoalId, Point2>& goal_positions,
                   std::optional<GoalId> leaving, bool leaving_by_switch) {
  std::vector<GoalId> candidates = schedule.pending();
  if (candidates.empty()) throw std::logic_error("choose_next: no pending goals");
  if (leaving_by_switch && leaving && candidates.size() > 1) {
    std::erase(candidates, *leaving);
  }
  if (!uses_prescribed_order(variant)) return select_next(candidates, agent, goal_positions);

  if (leaving_by_switch && leaving) {
    // Next pending goal after the one left, cycling through the prescribed order.
    const auto& order = schedule.order();
    const auto pos = std::find(order.begin(), order.end(), *leaving);
    const std::size_t start = static_cast<std::size_t>(pos - order.begin());
    for (std::size_t k = 1; k <= order.size(); ++k) {
      const GoalId id = order[(start + k) % order.size()];
      if (std::find(candidates.begin(), candidates.end(), id) != candidates.end()) return id;
    }
  }
  return candidates.front();
}

void apply(ExecutiveDecision& decision, MissionSchedule& schedule, BudgetLedger& ledger,
           MethodVariant variant, Point2 agent, const std::map<GoalId, Point2>& goal_positions,
           const BudgetCaps& caps) {
  decision.next_goal.reset();
  if (decision.action == MetaAction::Persist) return;

  const std::optional<GoalId> leaving = schedule.active();
  switch (decision.action) {
    case MetaAction::Commit: schedule.close_active(GoalState::Completed, decision.reason); break;
    case MetaAction::Abort: schedule.close_active(GoalState::Failed, decision.reason); break;
    case MetaAction::Switch: schedule.close_active(GoalState::Pending, decision.reason); break;
    case MetaAction::Persist: break;
  }
  ledger.active_spent = 0;
  if (schedule.done()) return;

  const GoalId next = choose_next(schedule, variant, agent, goal_positions, leaving,
                                  decision.action == MetaAction::Switch);
  schedule.activate(next);
  ledger.allocation = allocate(ledger, schedule.remaining(), caps);
  decision.next_goal = next;
}

Executive::Executive(ExecutiveConfig config, std::vector<GoalId> prescribed_order,
                     std::map<GoalId, Point2> goal_positions, long budget_max, Point2 start)
    : config_(std::move(config)),
      schedule_(std::move(prescribed_order)),
      positions_(std::move(goal_positions)),
      ledger_{.budget_max = budget_max},
      window_(config_.signal.window) {
  if (budget_max < 1) throw std::invalid_argument("Executive: budget must be positive");
  const GoalId first = choose_next(schedule_, config_.variant, start, positions_, std::nullopt, false);
  schedule_.activate(first);
  ledger_.allocation = allocate(ledger_, schedule_.remaining(), config_.caps);
}

bool Executive::finished() const {
  return schedule_.done() || ledger_.elapsed >= ledger_.budget_max;
}

ExecutiveStep Executive::observe(const SignalSample& sample, Point2 agent) {
  if (finished()) throw std::logic_error("Executive: episode already finished");
  const GoalId goal = *schedule_.active();

  ++ledger_.elapsed;
  ++ledger_.active_spent;
  ++schedule_.status(goal).spent;

  ExecutiveStep step{.goal = goal,
                     .allocation = ledger_.allocation,
                     .active_spent = ledger_.active_spent};
  step.summary = update(window_, sample, config_.signal);
  const SunkCost sunk{.spent = ledger_.active_spent, .allocation = ledger_.allocation};
  const MetaStateVector states = evaluate(step.summary, sample, sunk, config_.weights);

  step.decision = decide(states, sample.distance, ledger_, config_.thresholds, config_.variant,
                         schedule_.remaining());
  apply(step.decision, schedule_, ledger_, config_.variant, agent, positions_, config_.caps);
  if (step.decision.action != MetaAction::Persist) window_.clear();
  return step;
}

}  // namespace morn
