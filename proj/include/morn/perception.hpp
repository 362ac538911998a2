#pragma once

#include <optional>
#include <string>

#include "morn/grid.hpp"
#include "morn/rng.hpp"

namespace morn {

struct PerceptionParams {
  double base = 0.10;       // b
  double noise_std = 0.05;  // eta
  double amplitude = 0.80;  // A
  double range = 5.0;       // rho, metres
  double false_positive_rate = 0.02;
  double detectability = 0.9;
};

// Throws std::invalid_argument naming the offending field.
void validate(const PerceptionParams& params);

struct GoalInstance {
  int goal_id = 0;
  std::string category;
  Cell position;  // proxy placement when absent
  double detectability = 0.9;
  bool present = true;
};

struct EvidenceReading {
  double score = 0.0;
  bool detection = false;       // genuine target signal
  bool false_positive = false;  // one-step spike
  std::optional<Cell> source;   // where the signal came from, when genuine
};

// Draws per call: detectability, false positive, and one Gaussian (two
// uniforms), always four uniforms whatever the branch.
// `distance` is the geodesic distance from pose to the goal in metres.
EvidenceReading emit_evidence(const GoalInstance& goal, Cell pose, double distance,
                              const GridMap& map, const PerceptionParams& params, Rng& rng);

}  // namespace morn
