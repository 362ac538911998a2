#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morn/grid.hpp"
#include "morn/mapgen.hpp"
#include "morn/perception.hpp"

namespace morn {

struct SuiteParams {
  long budget_k2 = 500;
  long budget_k3 = 650;
  double infeasible_fraction = 0.2;
  double sealed_share = 0.5;  // of infeasible goals; the rest are absent
  double min_separation = 4.0;
  double detectability = 0.9;
  int max_placements = 20;
  int max_maps = 50;
  MapParams map;
};

void validate(const SuiteParams& params);

struct EpisodeSpec {
  int episode_id = 0;
  std::uint64_t seed = 0;
  int goal_count = 0;
  long budget_max = 0;
  std::string source;  // "procedural" or "fixture:<name>"
  GridMap map;
  Cell spawn;
  std::vector<GoalInstance> goals;  // prescribed order
  double min_separation = 0.0;
  int regenerations = 0;  // maps discarded before this one was accepted
  std::optional<PerceptionParams> perception;

  bool operator==(const EpisodeSpec&) const;
};

// Episode i uses seed derive_seed(master_seed, i). The first count_k2
// episodes have two goals, the rest three.
std::vector<EpisodeSpec> generate(int count_k2, int count_k3, std::uint64_t master_seed,
                                  const SuiteParams& params = {});

// Goals 1-9 in the scene become the prescribed order. Directives:
//   @budget N        step budget (default by goal count)
//   @absent 2,3      goals with no real instance
//   @noise X         perception noise_std
//   @fpr X           perception false positive rate
//   @detectability X
// Throws std::invalid_argument on unknown directives or bad values.
EpisodeSpec fixture_episode(const FixtureScene& scene, const std::string& name, std::uint64_t seed,
                            const SuiteParams& params, const PerceptionParams& perception);

// Reads <dir>/<name>.txt.
EpisodeSpec load_fixture_episode(const std::string& dir, const std::string& name, std::uint64_t seed,
                                 const SuiteParams& params, const PerceptionParams& perception);

}  // namespace morn
