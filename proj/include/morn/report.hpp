#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morn/config.hpp"
#include "morn/metrics.hpp"
#include "morn/runner.hpp"

namespace morn {

// Four decimals; "inf" / "-inf" / "nan" for non-finite values.
std::string fixed4(double x);

std::uint64_t fnv1a64(std::string_view bytes);

// Blocks K=2, K=3 and overall, one row per variant in the given order.
std::string bench_csv(std::span<const EpisodeTrace> traces, std::span<const MethodVariant> variants,
                      double reward, double lambda_cost);

std::string failures_csv(std::span<const EpisodeTrace> traces, std::span<const MethodVariant> variants);

std::string sweep_csv(std::span<const SweepPoint> points);

std::string summary_json(std::span<const EpisodeTrace> traces, std::span<const MethodVariant> variants,
                         const RunConfig& config, std::span<const std::string> warnings);

// One JSON object per line: header (with the map), steps, goals, summary.
// Requires the trace to have kept its steps.
std::string trace_jsonl(const EpisodeSpec& spec, const EpisodeTrace& trace);

// Human-readable step log rebuilt from trace_jsonl output; with `ascii`
// a map frame follows every intervention and the final step.
// Throws std::invalid_argument on malformed input.
std::string render_report(std::string_view jsonl, bool ascii);

}  // namespace morn
