#include "morn/mapgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morn {

void validate(const MapParams& p) {
  if (p.rooms_x < 1 || p.rooms_y < 1) throw std::invalid_argument("world.rooms_x/rooms_y must be >= 1");
  if (p.room_min < 4) throw std::invalid_argument("world.room_min must be >= 4");
  if (p.room_max < p.room_min) throw std::invalid_argument("world.room_max must be >= world.room_min");
  if (p.door_width < 1 || p.door_width > p.room_min - 2) {
    throw std::invalid_argument("world.door_width must be in [1, room_min - 2]");
  }
  if (!(p.extra_door_prob >= 0.0 && p.extra_door_prob <= 1.0)) {
    throw std::invalid_argument("world.extra_door_prob must be in [0, 1]");
  }
  if (!(p.clutter >= 0.0 && p.clutter <= 0.2)) throw std::invalid_argument("world.clutter must be in [0, 0.2]");
  if (!(p.cell_size > 0.0)) throw std::invalid_argument("world.cell_size must be > 0");
}

namespace {

struct Door {
  int a;
  int b;
};

void carve_door(GridMap& map, const Room& a, const Room& b, int width, Rng& rng) {
  if (a.hi.x + 2 == b.lo.x) {
    const int lo = std::max(a.lo.y, b.lo.y) + 1;
    const int hi = std::min(a.hi.y, b.hi.y) - width;
    const int y0 = rng.uniform_int(lo, std::max(lo, hi));
    for (int k = 0; k < width; ++k) map.set({a.hi.x + 1, y0 + k}, Occupancy::Free);
  } else {
    const int lo = std::max(a.lo.x, b.lo.x) + 1;
    const int hi = std::min(a.hi.x, b.hi.x) - width;
    const int x0 = rng.uniform_int(lo, std::max(lo, hi));
    for (int k = 0; k < width; ++k) map.set({x0 + k, a.hi.y + 1}, Occupancy::Free);
  }
}

bool ring_free(const GridMap& map, Cell c) {
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (!map.is_free({c.x + dx, c.y + dy})) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<GeneratedMap> generate_map(const MapParams& p, const std::vector<int>& sealed, Rng& rng) {
  validate(p);
  std::vector<int> widths(p.rooms_x), heights(p.rooms_y);
  for (int& w : widths) w = rng.uniform_int(p.room_min, p.room_max);
  for (int& h : heights) h = rng.uniform_int(p.room_min, p.room_max);

  int width = 1, height = 1;
  for (int w : widths) width += w + 1;
  for (int h : heights) height += h + 1;

  GeneratedMap out{.map = GridMap(width, height, p.cell_size)};
  int y0 = 1;
  for (int j = 0; j < p.rooms_y; ++j) {
    int x0 = 1;
    for (int i = 0; i < p.rooms_x; ++i) {
      const int idx = j * p.rooms_x + i;
      Room r{.index = idx,
             .lo = {x0, y0},
             .hi = {x0 + widths[i] - 1, y0 + heights[j] - 1},
             .sealed = std::find(sealed.begin(), sealed.end(), idx) != sealed.end()};
      for (int y = r.lo.y; y <= r.hi.y; ++y) {
        for (int x = r.lo.x; x <= r.hi.x; ++x) out.map.set({x, y}, Occupancy::Free);
      }
      out.rooms.push_back(r);
      x0 += widths[i] + 1;
    }
    y0 += heights[j] + 1;
  }

  // Adjacent pairs of unsealed rooms, in a fixed order.
  std::vector<Door> edges;
  for (int j = 0; j < p.rooms_y; ++j) {
    for (int i = 0; i < p.rooms_x; ++i) {
      const int idx = j * p.rooms_x + i;
      if (out.rooms[idx].sealed) continue;
      if (i + 1 < p.rooms_x && !out.rooms[idx + 1].sealed) edges.push_back({idx, idx + 1});
      if (j + 1 < p.rooms_y && !out.rooms[idx + p.rooms_x].sealed) edges.push_back({idx, idx + p.rooms_x});
    }
  }

  // Randomised Prim over the unsealed rooms.
  const int n = p.rooms_x * p.rooms_y;
  std::vector<bool> in_tree(n, false);
  std::vector<bool> used(edges.size(), false);
  int open_rooms = 0, start = -1;
  for (const Room& r : out.rooms) {
    if (r.sealed) continue;
    ++open_rooms;
    if (start < 0) start = r.index;
  }
  if (start < 0) return std::nullopt;
  in_tree[start] = true;
  for (int joined = 1; joined < open_rooms; ++joined) {
    std::vector<std::size_t> cut;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (in_tree[edges[e].a] != in_tree[edges[e].b]) cut.push_back(e);
    }
    if (cut.empty()) return std::nullopt;
    const std::size_t pick = cut[rng.uniform_int(0, static_cast<int>(cut.size()) - 1)];
    used[pick] = true;
    in_tree[edges[pick].a] = in_tree[edges[pick].b] = true;
    carve_door(out.map, out.rooms[edges[pick].a], out.rooms[edges[pick].b], p.door_width, rng);
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (used[e] || !rng.bernoulli(p.extra_door_prob)) continue;
    carve_door(out.map, out.rooms[edges[e].a], out.rooms[edges[e].b], p.door_width, rng);
  }

  // Isolated pillars never split a 4-connected region.
  for (const Room& r : out.rooms) {
    const int pillars = static_cast<int>(std::lround(p.clutter * r.area()));
    for (int k = 0; k < pillars; ++k) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        const Cell c{rng.uniform_int(r.lo.x + 1, r.hi.x - 1), rng.uniform_int(r.lo.y + 1, r.hi.y - 1)};
        if (!ring_free(out.map, c)) continue;
        out.map.set(c, Occupancy::Wall);
        break;
      }
    }
  }
  out.map.validate();
  return out;
}

}  // namespace morn
