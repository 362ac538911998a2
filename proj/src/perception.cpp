#include "morn/perception.hpp"

#include <cmath>
#include <stdexcept>

#include "morn/signal_core.hpp"

namespace morn {

void validate(const PerceptionParams& p) {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(p.base)) throw std::invalid_argument("perception.base must be in [0, 1]");
  if (!(p.noise_std >= 0.0 && std::isfinite(p.noise_std))) {
    throw std::invalid_argument("perception.noise_std must be >= 0");
  }
  if (!unit(p.amplitude)) throw std::invalid_argument("perception.amplitude must be in [0, 1]");
  if (!(p.range > 0.0 && std::isfinite(p.range))) throw std::invalid_argument("perception.range must be > 0");
  if (!unit(p.false_positive_rate)) {
    throw std::invalid_argument("perception.false_positive_rate must be in [0, 1]");
  }
  if (!unit(p.detectability)) throw std::invalid_argument("perception.detectability must be in [0, 1]");
}

EvidenceReading emit_evidence(const GoalInstance& goal, Cell pose, double distance,
                              const GridMap& map, const PerceptionParams& p, Rng& rng) {
  const double u_detect = rng.uniform();
  const double u_spike = rng.uniform();
  const double noise = p.noise_std * rng.normal();

  EvidenceReading out;
  const bool in_view = goal.present && distance <= p.range && line_of_sight(map, pose, goal.position);
  if (in_view && u_detect < goal.detectability) {
    out.detection = true;
    out.source = goal.position;
    out.score = clip(p.base + p.amplitude * std::exp(-distance / p.range) + noise, 0.0, 1.0);
  } else if (u_spike < p.false_positive_rate) {
    out.false_positive = true;
    out.score = clip(p.base + p.amplitude + noise, 0.0, 1.0);
  } else {
    out.score = clip(p.base + noise, 0.0, 1.0);
  }
  return out;
}

}  // namespace morn
