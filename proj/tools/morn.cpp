#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morn/config.hpp"
#include "morn/episode.hpp"
#include "morn/metrics.hpp"
#include "morn/report.hpp"
#include "morn/runner.hpp"

#ifndef MORN_FIXTURE_DIR
#define MORN_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;
using namespace morn;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "results";
  std::string fixture_dir = MORN_FIXTURE_DIR;
  std::string variants;
  std::string variant = "MORN_FULL";
  std::optional<int> episodes;
  int workers = 0;
  bool trace_ascii = false;
  bool write_traces = false;
  std::string fixture;
  std::optional<int> episode;
  std::string param;
  std::string values;
  std::string trace_file;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<MethodVariant> parse_variants(const std::string& text) {
  if (text.empty()) return {std::begin(kAllVariants), std::end(kAllVariants)};
  std::vector<MethodVariant> out;
  for (const std::string& name : split(text)) {
    const auto v = parse_variant(name);
    if (!v) throw ConfigError("--variants", "unknown variant '" + name + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError("--variants", "empty variant list");
  return out;
}

RunConfig load(const Options& o, std::vector<std::string>& warnings) {
  RunConfig config;
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("MORN_CONFIG")) path = env;
  }
  if (!path.empty()) config = load_config(path);
  if (o.seed) config.bench.seed = *o.seed;
  if (o.episodes) {
    if (*o.episodes < 0) throw ConfigError("--episodes", "must be >= 0");
    config.bench.episodes_k2 = static_cast<int>(std::lround(0.6 * *o.episodes));
    config.bench.episodes_k3 = *o.episodes - config.bench.episodes_k2;
  }
  warnings = finalize(config);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return config;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<EpisodeSpec> suite(const RunConfig& config) {
  return generate(config.bench.episodes_k2, config.bench.episodes_k3, config.bench.seed, config.suite);
}

int cmd_run(const Options& o) {
  std::vector<std::string> warnings;
  const RunConfig config = load(o, warnings);
  const auto variant = parse_variant(o.variant);
  if (!variant) throw ConfigError("--variant", "unknown variant '" + o.variant + "'");

  EpisodeSpec spec;
  if (!o.fixture.empty()) {
    try {
      spec = load_fixture_episode(o.fixture_dir, o.fixture, config.bench.seed, config.suite, config.perception);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--fixture", e.what());
    }
  } else {
    const int index = o.episode.value_or(0);
    const int total = config.bench.episodes_k2 + config.bench.episodes_k3;
    if (index < 0 || index >= total) throw ConfigError("--episode", "outside the generated suite");
    spec = generate(config.bench.episodes_k2, config.bench.episodes_k3, config.bench.seed, config.suite)[index];
  }

  const EpisodeTrace trace = run(spec, *variant, config);
  const std::string jsonl = trace_jsonl(spec, trace);
  const std::string log = render_report(jsonl, o.trace_ascii);
  write_file(fs::path(o.out) / "trace.jsonl", jsonl);
  write_file(fs::path(o.out) / "steps.log", log);
  std::cout << log;
  return 0;
}

int cmd_bench(const Options& o) {
  std::vector<std::string> warnings;
  const RunConfig config = load(o, warnings);
  const std::vector<MethodVariant> variants = parse_variants(o.variants);
  const std::vector<EpisodeSpec> specs = suite(config);
  if (specs.empty()) throw ConfigError("--episodes", "the suite is empty");

  RunOptions options{.keep_steps = o.write_traces};
  const fs::path out(o.out);
  if (o.write_traces) {
    fs::create_directories(out / "traces");
    options.on_trace = [&](const EpisodeSpec& spec, EpisodeTrace& trace) {
      const std::string name = "ep" + std::to_string(spec.episode_id) + "_" +
                               std::string(to_string(trace.variant)) + ".jsonl";
      write_file(out / "traces" / name, trace_jsonl(spec, trace));
      trace.steps.clear();
      trace.steps.shrink_to_fit();
    };
  }
  const std::vector<EpisodeTrace> traces = run_suite(specs, variants, config, options, o.workers);
  const std::string csv = bench_csv(traces, variants, config.bench.reward, config.bench.lambda);
  write_file(out / "bench.csv", csv);
  write_file(out / "failures.csv", failures_csv(traces, variants));
  write_file(out / "summary.json", summary_json(traces, variants, config, warnings));
  std::cout << csv;
  return 0;
}

int cmd_sweep(const Options& o) {
  std::vector<std::string> warnings;
  const RunConfig config = load(o, warnings);
  const std::vector<MethodVariant> variants =
      o.variants.empty() ? std::vector<MethodVariant>{MethodVariant::MornFull} : parse_variants(o.variants);
  const std::vector<std::string> values = split(o.values);
  if (values.empty()) throw ConfigError("--values", "empty value list");
  sweep_key(o.param);
  const std::vector<EpisodeSpec> specs = suite(config);
  if (specs.empty()) throw ConfigError("--episodes", "the suite is empty");
  const std::vector<SweepPoint> points = sweep(specs, variants, config, o.param, values, o.workers);
  const std::string csv = sweep_csv(points);
  write_file(fs::path(o.out) / "sweep.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_report(const Options& o) {
  std::ifstream in(o.trace_file, std::ios::binary);
  if (!in) throw ConfigError("--trace", "cannot open " + o.trace_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::cout << render_report(buf.str(), o.trace_ascii);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted multi-goal navigation executive: episodes, benchmark, sweeps"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "Key-value configuration file (falls back to MORN_CONFIG)");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--fixtures", o.fixture_dir, "Fixture map directory");

  auto* run_cmd = app.add_subcommand("run", "Run one episode and print its step log");
  run_cmd->add_option("--fixture", o.fixture, "Fixture map name");
  run_cmd->add_option("--episode", o.episode, "Episode index in the generated suite");
  run_cmd->add_option("--variant", o.variant, "Method variant");
  run_cmd->add_option("--episodes", o.episodes, "Suite size used with --episode");
  run_cmd->add_flag("--trace-ascii", o.trace_ascii, "Print map frames at every intervention");

  auto* bench_cmd = app.add_subcommand("bench", "Run every variant over the generated suite");
  bench_cmd->add_option("--variants", o.variants, "Comma-separated variants (default: all)");
  bench_cmd->add_option("--episodes", o.episodes, "Total episodes (60% two-goal, 40% three-goal)");
  bench_cmd->add_option("--workers", o.workers, "Worker threads (default: all available)");
  bench_cmd->add_flag("--write-traces", o.write_traces, "Write one JSONL trace per episode and variant");

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one threshold over the generated suite");
  sweep_cmd->add_option("--param", o.param, "tau_a, tau_s, tau_c, d_commit, t_g or a dotted key")->required();
  sweep_cmd->add_option("--values", o.values, "Comma-separated values")->required();
  sweep_cmd->add_option("--variants", o.variants, "Comma-separated variants (default: MORN_FULL)");
  sweep_cmd->add_option("--episodes", o.episodes, "Total episodes");
  sweep_cmd->add_option("--workers", o.workers, "Worker threads");

  auto* report_cmd = app.add_subcommand("report", "Render a JSONL trace as a step log");
  report_cmd->add_option("--trace", o.trace_file, "Trace file")->required();
  report_cmd->add_flag("--trace-ascii", o.trace_ascii, "Print map frames at every intervention");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(o);
    if (*bench_cmd) return cmd_bench(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*report_cmd) return cmd_report(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
