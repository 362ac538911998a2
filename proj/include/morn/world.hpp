#pragma once

#include <map>
#include <optional>
#include <vector>

#include "morn/episode.hpp"
#include "morn/navigator.hpp"
#include "morn/perception.hpp"
#include "morn/rng.hpp"

namespace morn {

// Per-episode random streams, split from the episode seed.
inline constexpr std::uint64_t kPerceptionStream = 1;
inline constexpr std::uint64_t kNavigatorStream = 2;

struct StepObservation {
  PrimitiveAction action = PrimitiveAction::Stay;
  Cell pose;
  NavMode mode = NavMode::Explore;
  EvidenceReading reading;
  double distance = kUnreachable;
};

// One episode's map, goals, navigator and sensor. Holds a reference to the
// spec, which must outlive it.
class World {
 public:
  World(const EpisodeSpec& spec, const PerceptionParams& perception, const NavParams& nav);

  // One primitive step of the navigator towards `goal`, then one reading.
  StepObservation advance(int goal);

  // Geodesic metres from `pose` to the goal; +inf when absent or unreachable.
  double distance(int goal, Cell pose) const;
  const GoalInstance& goal(int id) const;
  std::map<int, Point2> goal_positions() const;
  Point2 agent() const { return spec_->map.center(navigator_.pose()); }
  const Navigator& navigator() const { return navigator_; }
  const PerceptionParams& perception() const { return perception_; }

 private:
  const EpisodeSpec* spec_;
  PerceptionParams perception_;
  Navigator navigator_;
  Rng perception_rng_;
  Rng navigator_rng_;
  std::map<int, std::vector<int>> fields_;
  std::optional<int> last_goal_;
  std::optional<EvidenceReading> last_reading_;
};

}  // namespace morn
