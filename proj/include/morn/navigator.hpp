#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morn/grid.hpp"
#include "morn/perception.hpp"
#include "morn/rng.hpp"

namespace morn {

enum class NavMode { Explore, Approach };
enum class PrimitiveAction { Stay, North, East, South, West };

std::string_view to_string(NavMode mode);
std::string_view to_string(PrimitiveAction action);

struct NavParams {
  double sensor_range = 2.0;  // metres, coverage marking
  int approach_streak = 2;    // consecutive strong readings before approaching
};

void validate(const NavParams& params);

struct NavigatorState {
  Cell pose;
  int heading = 0;  // index into kNeighbours
  NavMode mode = NavMode::Explore;
  std::optional<Cell> believed_target;
  double coverage = 0.0;
};

// Goal-conditioned reactive policy: frontier coverage until the evidence
// stream is strong for `approach_streak` steps, then greedy descent towards
// the evidence source. It sees only the map, its pose and the readings for
// the goal it is given.
class Navigator {
 public:
  // `trigger` is the evidence level counted as strong.
  Navigator(const GridMap& map, Cell spawn, NavParams params, double trigger);

  // Consumes the previous reading for `goal` (nullopt on the first step
  // towards it) and moves at most one cell.
  PrimitiveAction step(int goal, const std::optional<EvidenceReading>& last, Rng& rng);

  Cell pose() const { return pose_; }
  NavigatorState state(int goal) const;
  // Seen fraction of the free cells reachable from the spawn.
  double coverage(int goal) const;

 private:
  struct Memory {
    std::vector<std::uint8_t> seen;
    std::size_t seen_reachable = 0;
    NavMode mode = NavMode::Explore;
    std::optional<Cell> believed_target;
    std::optional<Cell> frontier;
    std::vector<int> field;
    int streak = 0;
  };

  Memory& memory(int goal);
  void observe(Memory& m);
  bool is_frontier(const Memory& m, Cell c) const;
  std::optional<Cell> nearest_frontier(const Memory& m, Rng& rng) const;
  PrimitiveAction descend(const std::vector<int>& field);
  const std::vector<std::uint32_t>& visible_from(Cell c);

  const GridMap* map_;
  NavParams params_;
  double trigger_;
  Cell pose_;
  int heading_ = 0;
  std::vector<std::uint8_t> reachable_;
  std::size_t reachable_count_ = 0;
  std::map<int, Memory> memory_;
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> visibility_;
};

}  // namespace morn
