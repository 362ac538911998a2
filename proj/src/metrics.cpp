#include "morn/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace morn {

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::NoDetection: return "NO_DETECTION";
    case FailureKind::Aborted: return "ABORTED";
    case FailureKind::SwitchedUnresolved: return "SWITCHED_UNRESOLVED";
    case FailureKind::FalseCommit: return "FALSE_COMMIT";
  }
  return "?";
}

std::optional<FailureKind> classify(const GoalOutcome& g) {
  if (g.found) return std::nullopt;
  if (g.committed) return FailureKind::FalseCommit;
  if (g.last_exit == DecisionReason::LowPotentiality) return FailureKind::Aborted;
  if (g.last_exit == DecisionReason::GateClosed) return FailureKind::SwitchedUnresolved;
  return FailureKind::NoDetection;
}

namespace {

double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

std::map<FailureKind, int> decompose_failures(std::span<const EpisodeTrace> traces) {
  std::map<FailureKind, int> counts;
  for (FailureKind k : kAllFailureKinds) counts[k] = 0;
  for (const EpisodeTrace& t : traces) {
    for (const GoalOutcome& g : t.goals) {
      if (const auto kind = classify(g)) ++counts[*kind];
    }
  }
  return counts;
}

MetricsReport compute_metrics(std::span<const EpisodeTrace> traces, double reward, double lambda_cost) {
  if (traces.empty()) throw std::invalid_argument("compute_metrics: no traces");
  std::vector<double> all, ordered, frac, steps, wasted, utility;
  MetricsReport r{.episodes = static_cast<int>(traces.size())};
  for (const EpisodeTrace& t : traces) {
    if (t.goals.empty()) throw std::invalid_argument("compute_metrics: trace without goals");
    int found = 0;
    long wasted_steps = 0;
    for (const GoalOutcome& g : t.goals) {
      if (g.found) {
        ++found;
      } else {
        wasted_steps += g.steps_charged;
      }
    }
    r.goals += static_cast<int>(t.goals.size());
    all.push_back(t.all_found() ? 1.0 : 0.0);
    ordered.push_back(t.found_in_order() ? 1.0 : 0.0);
    frac.push_back(static_cast<double>(found) / static_cast<double>(t.goals.size()));
    steps.push_back(static_cast<double>(t.total_steps));
    wasted.push_back(t.total_steps > 0 ? static_cast<double>(wasted_steps) / static_cast<double>(t.total_steps)
                                       : 0.0);
    utility.push_back(reward * found - lambda_cost * static_cast<double>(t.total_steps));
  }
  r.mgsr = sorted_mean(std::move(all));
  r.ssr = sorted_mean(std::move(ordered));
  r.cr = sorted_mean(std::move(frac));
  r.mean_steps = sorted_mean(std::move(steps));
  r.wsf = sorted_mean(std::move(wasted));
  r.utility_mean = sorted_mean(std::move(utility));
  r.failure_counts = decompose_failures(traces);
  return r;
}

std::vector<EpisodeTrace> select(std::span<const EpisodeTrace> traces, MethodVariant variant,
                                 std::optional<int> goal_count) {
  std::vector<EpisodeTrace> out;
  for (const EpisodeTrace& t : traces) {
    if (t.variant == variant && (!goal_count || t.goal_count == *goal_count)) out.push_back(t);
  }
  return out;
}

std::vector<SweepPoint> sweep(std::span<const EpisodeSpec> specs, std::span<const MethodVariant> variants,
                              const RunConfig& base, std::string_view parameter,
                              std::span<const std::string> values, int workers) {
  const std::string key = sweep_key(parameter);
  if (values.empty()) throw ConfigError(key, "sweep needs at least one value");
  std::vector<SweepPoint> out;
  for (const std::string& value : values) {
    RunConfig config = base;
    set_value(config, key, value);
    finalize(config);
    const std::vector<EpisodeTrace> traces =
        run_suite(specs, variants, config, RunOptions{.keep_steps = false}, workers);
    for (MethodVariant v : variants) {
      const std::vector<EpisodeTrace> subset = select(traces, v);
      out.push_back(SweepPoint{.parameter = key,
                               .value = value,
                               .variant = v,
                               .report = compute_metrics(subset, config.bench.reward, config.bench.lambda)});
    }
  }
  return out;
}

}  // namespace morn
