#pragma once

#include <optional>
#include <vector>

#include "morn/grid.hpp"
#include "morn/rng.hpp"

namespace morn {

struct MapParams {
  int rooms_x = 6;
  int rooms_y = 6;
  int room_min = 14;  // interior cells
  int room_max = 18;
  double extra_door_prob = 0.3;
  int door_width = 2;
  double clutter = 0.02;  // pillar density inside rooms
  double cell_size = 0.25;
};

// Throws std::invalid_argument naming the offending field.
void validate(const MapParams& params);

// Rectangular room interior, inclusive bounds.
struct Room {
  int index = 0;
  Cell lo;
  Cell hi;
  bool sealed = false;

  bool contains(Cell c) const { return c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y; }
  int area() const { return (hi.x - lo.x + 1) * (hi.y - lo.y + 1); }
};

struct GeneratedMap {
  GridMap map;
  std::vector<Room> rooms;
};

// Room grid joined by a random spanning tree of doors plus extra doors.
// Sealed rooms get no doors. Returns nullopt when the unsealed rooms cannot
// be connected.
std::optional<GeneratedMap> generate_map(const MapParams& params, const std::vector<int>& sealed,
                                         Rng& rng);

}  // namespace morn
