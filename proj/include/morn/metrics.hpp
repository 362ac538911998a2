#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morn/runner.hpp"

namespace morn {

enum class FailureKind { NoDetection, Aborted, SwitchedUnresolved, FalseCommit };

inline constexpr FailureKind kAllFailureKinds[] = {FailureKind::NoDetection, FailureKind::Aborted,
                                                   FailureKind::SwitchedUnresolved,
                                                   FailureKind::FalseCommit};

std::string_view to_string(FailureKind kind);

// Tag for a goal that was never found; nullopt when it was found.
//   FALSE_COMMIT         committed outside the success radius
//   ABORTED              last left on low potentiality
//   SWITCHED_UNRESOLVED  last left through the persistence gate
//   NO_DETECTION         cap or budget ran out on it, or never attempted
std::optional<FailureKind> classify(const GoalOutcome& goal);

struct MetricsReport {
  int episodes = 0;
  int goals = 0;
  double mgsr = 0.0;
  double ssr = 0.0;
  double cr = 0.0;
  double mean_steps = 0.0;
  double wsf = 0.0;
  double utility_mean = 0.0;
  std::map<FailureKind, int> failure_counts;
};

// Episode means. Per-episode values are sorted before summation so the
// result does not depend on trace order. Throws std::invalid_argument on
// an empty input.
MetricsReport compute_metrics(std::span<const EpisodeTrace> traces, double reward = 1.0,
                              double lambda_cost = 0.0);

std::map<FailureKind, int> decompose_failures(std::span<const EpisodeTrace> traces);

// Traces whose variant and (optionally) goal count match.
std::vector<EpisodeTrace> select(std::span<const EpisodeTrace> traces, MethodVariant variant,
                                 std::optional<int> goal_count = std::nullopt);

struct SweepPoint {
  std::string parameter;  // dotted key
  std::string value;
  MethodVariant variant = MethodVariant::MornFull;
  MetricsReport report;
};

// Same episodes for every value. Throws ConfigError for an unknown
// parameter, an empty value list or a value the config rejects.
std::vector<SweepPoint> sweep(std::span<const EpisodeSpec> specs, std::span<const MethodVariant> variants,
                              const RunConfig& base, std::string_view parameter,
                              std::span<const std::string> values, int workers = 0);

}  // namespace morn
