#include "morn/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace morn {

using ordered_json = nlohmann::ordered_json;

std::string fixed4(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string metrics_row(const std::string& block, MethodVariant v, const MetricsReport& r) {
  return block + "," + std::string(to_string(v)) + "," + std::to_string(r.episodes) + "," + fixed4(r.mgsr) +
         "," + fixed4(r.ssr) + "," + fixed4(r.cr) + "," + fixed4(r.mean_steps) + "," + fixed4(r.wsf) + "," +
         fixed4(r.utility_mean) + "\n";
}

ordered_json metrics_json(const MetricsReport& r) {
  ordered_json failures = ordered_json::object();
  for (const auto& [kind, count] : r.failure_counts) failures[std::string(to_string(kind))] = count;
  return {{"episodes", r.episodes}, {"goals", r.goals},   {"MGSR", fixed4(r.mgsr)},
          {"SSR", fixed4(r.ssr)},   {"CR", fixed4(r.cr)}, {"Steps", fixed4(r.mean_steps)},
          {"WSF", fixed4(r.wsf)},   {"J", fixed4(r.utility_mean)}, {"failures", failures}};
}

ordered_json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fixed4(x));
}

}  // namespace

std::string bench_csv(std::span<const EpisodeTrace> traces, std::span<const MethodVariant> variants,
                      double reward, double lambda_cost) {
  std::string out = "block,variant,episodes,MGSR,SSR,CR,Steps,WSF,J\n";
  for (const auto& [block, k] : {std::pair<std::string, std::optional<int>>{"K=2", 2},
                                 std::pair<std::string, std::optional<int>>{"K=3", 3},
                                 std::pair<std::string, std::optional<int>>{"overall", std::nullopt}}) {
    for (MethodVariant v : variants) {
      const std::vector<EpisodeTrace> subset = select(traces, v, k);
      if (subset.empty()) continue;
      out += metrics_row(block, v, compute_metrics(subset, reward, lambda_cost));
    }
  }
  return out;
}

std::string failures_csv(std::span<const EpisodeTrace> traces, std::span<const MethodVariant> variants) {
  std::string out = "variant";
  for (FailureKind k : kAllFailureKinds) out += "," + std::string(to_string(k));
  out += "\n";
  for (MethodVariant v : variants) {
    const std::vector<EpisodeTrace> subset = select(traces, v);
    const auto counts = decompose_failures(subset);
    out += std::string(to_string(v));
    for (FailureKind k : kAllFailureKinds) out += "," + std::to_string(counts.at(k));
    out += "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "parameter,value,variant,episodes,MGSR,SSR,CR,Steps,WSF,J\n";
  for (const SweepPoint& p : points) {
    out += p.parameter + "," + p.value + "," + metrics_row("", p.variant, p.report).substr(1);
  }
  return out;
}

std::string summary_json(std::span<const EpisodeTrace> traces, std::span<const MethodVariant> variants,
                         const RunConfig& config, std::span<const std::string> warnings) {
  ordered_json doc;
  doc["seed"] = config.bench.seed;
  doc["episodes_k2"] = config.bench.episodes_k2;
  doc["episodes_k3"] = config.bench.episodes_k3;
  doc["success_radius"] = fixed4(config.bench.success_radius);
  ordered_json cfg = ordered_json::object();
  for (const std::string& key : config_keys()) cfg[key] = get_value(config, key);
  doc["config"] = cfg;
  doc["warnings"] = std::vector<std::string>(warnings.begin(), warnings.end());
  ordered_json results = ordered_json::object();
  for (MethodVariant v : variants) {
    ordered_json blocks = ordered_json::object();
    for (const auto& [block, k] : {std::pair<std::string, std::optional<int>>{"K=2", 2},
                                   std::pair<std::string, std::optional<int>>{"K=3", 3},
                                   std::pair<std::string, std::optional<int>>{"overall", std::nullopt}}) {
      const std::vector<EpisodeTrace> subset = select(traces, v, k);
      if (!subset.empty()) {
        blocks[block] = metrics_json(compute_metrics(subset, config.bench.reward, config.bench.lambda));
      }
    }
    results[std::string(to_string(v))] = blocks;
  }
  doc["results"] = results;
  return doc.dump(2) + "\n";
}

std::string trace_jsonl(const EpisodeSpec& spec, const EpisodeTrace& trace) {
  if (trace.steps.size() != static_cast<std::size_t>(trace.total_steps)) {
    throw std::invalid_argument("trace_jsonl: trace has no step records");
  }
  std::string out;
  ordered_json goals = ordered_json::array();
  for (const GoalInstance& g : spec.goals) {
    goals.push_back({{"id", g.goal_id},
                     {"category", g.category},
                     {"cell", {g.position.x, g.position.y}},
                     {"present", g.present}});
  }
  ordered_json header{{"type", "header"},
                      {"episode", trace.episode_id},
                      {"seed", trace.seed},
                      {"source", trace.source},
                      {"variant", to_string(trace.variant)},
                      {"goal_count", trace.goal_count},
                      {"budget", trace.budget_max},
                      {"cell_size", spec.map.cell_size()},
                      {"spawn", {spec.spawn.x, spec.spawn.y}},
                      {"goals", goals},
                      {"map", spec.map.rows()}};
  out += header.dump() + "\n";
  for (const StepRecord& s : trace.steps) {
    ordered_json rec{{"type", "step"},
                     {"t", s.t},
                     {"goal", s.goal},
                     {"pose", {s.pose.x, s.pose.y}},
                     {"primitive", to_string(s.primitive)},
                     {"mode", to_string(s.mode)},
                     {"d", number_or_null(s.sample.distance)},
                     {"s", number_or_null(s.sample.evidence)},
                     {"fp", s.false_positive},
                     {"mean", number_or_null(s.summary.mean)},
                     {"var", number_or_null(s.summary.variance)},
                     {"stab", number_or_null(s.summary.stability)},
                     {"vel", number_or_null(s.summary.velocity)},
                     {"gain", number_or_null(s.summary.info_gain)},
                     {"pi", number_or_null(s.states.potentiality)},
                     {"gamma", number_or_null(s.states.persistence)},
                     {"sigma", number_or_null(s.states.sufficiency)},
                     {"action", to_string(s.action)},
                     {"reason", to_string(s.reason)},
                     {"next", s.next_goal ? ordered_json(*s.next_goal) : ordered_json(nullptr)},
                     {"alloc", s.allocation},
                     {"spent", s.active_spent}};
    out += rec.dump() + "\n";
  }
  for (const GoalOutcome& g : trace.goals) {
    const auto failure = classify(g);
    ordered_json rec{{"type", "goal"},
                     {"id", g.id},
                     {"category", g.category},
                     {"present", g.present},
                     {"reachable", g.reachable},
                     {"state", to_string(g.state)},
                     {"steps", g.steps_charged},
                     {"switches", g.switch_count},
                     {"activations", g.activations},
                     {"last_exit", g.last_exit ? ordered_json(to_string(*g.last_exit)) : ordered_json(nullptr)},
                     {"committed", g.committed},
                     {"commit_step", g.commit_step},
                     {"commit_distance", number_or_null(g.commit_distance)},
                     {"found", g.found},
                     {"failure", failure ? ordered_json(to_string(*failure)) : ordered_json(nullptr)}};
    out += rec.dump() + "\n";
  }
  ordered_json summary{{"type", "summary"},
                       {"total_steps", trace.total_steps},
                       {"all_found", trace.all_found()},
                       {"in_order", trace.found_in_order()},
                       {"completion_order", trace.completion_order}};
  out += summary.dump() + "\n";
  return out;
}

namespace {

std::string num(const ordered_json& v) { return v.is_null() ? "inf" : fixed4(v.get<double>()); }

std::string frame(std::vector<std::string> rows, const ordered_json& header,
                  const std::vector<std::pair<int, int>>& path, std::pair<int, int> agent) {
  for (const auto& [x, y] : path) rows[y][x] = '*';
  for (const auto& g : header["goals"]) {
    const int x = g["cell"][0], y = g["cell"][1];
    const int id = g["id"];
    rows[y][x] = g["present"].get<bool>() ? static_cast<char>('0' + id) : 'x';
  }
  rows[agent.second][agent.first] = '@';
  std::string out;
  for (const std::string& r : rows) out += r + "\n";
  return out;
}

}  // namespace

std::string render_report(std::string_view jsonl, bool ascii) {
  std::istringstream in{std::string(jsonl)};
  std::string line;
  ordered_json header;
  std::vector<std::string> rows;
  std::vector<std::pair<int, int>> path;
  std::ostringstream out;
  char buf[256];
  int line_no = 0;
  ordered_json last_step;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json rec;
    try {
      rec = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string type = rec.value("type", "");
    if (type == "header") {
      header = rec;
      rows = rec["map"].get<std::vector<std::string>>();
      path.emplace_back(rec["spawn"][0].get<int>(), rec["spawn"][1].get<int>());
      out << "episode " << rec["episode"] << " " << rec["source"].get<std::string>() << " variant "
          << rec["variant"].get<std::string>() << " budget " << rec["budget"] << "\n";
      out << "     t goal        d_t      s_t       Pi    Gamma    Sigma  action  reason             budget\n";
    } else if (type == "step") {
      if (header.is_null()) throw std::invalid_argument("trace: step before header");
      const int x = rec["pose"][0], y = rec["pose"][1];
      path.emplace_back(x, y);
      const std::string action = rec["action"];
      std::snprintf(buf, sizeof buf, "%6ld %4d %10s %8s %8s %8s %8s  %-7s %-18s %ld/%ld\n",
                    rec["t"].get<long>(), rec["goal"].get<int>(), num(rec["d"]).c_str(), num(rec["s"]).c_str(),
                    num(rec["pi"]).c_str(), num(rec["gamma"]).c_str(), num(rec["sigma"]).c_str(),
                    action.c_str(), rec["reason"].get<std::string>().c_str(), rec["t"].get<long>(),
                    header["budget"].get<long>());
      out << buf;
      if (ascii && action != "PERSIST") out << frame(rows, header, path, {x, y});
      last_step = rec;
    } else if (type == "goal") {
      out << "goal " << rec["id"] << " " << rec["state"].get<std::string>() << " steps " << rec["steps"]
          << " found " << (rec["found"].get<bool>() ? "yes" : "no");
      if (!rec["failure"].is_null()) out << " failure " << rec["failure"].get<std::string>();
      out << "\n";
    } else if (type == "summary") {
      if (ascii && !last_step.is_null() && last_step["action"] == "PERSIST") {
        out << frame(rows, header, path, path.back());
      }
      out << "total steps " << rec["total_steps"] << " all found "
          << (rec["all_found"].get<bool>() ? "yes" : "no") << "\n";
    } else {
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": unknown record type");
    }
  }
  if (header.is_null()) throw std::invalid_argument("trace: missing header");
  return out.str();
}

}  // namespace morn
