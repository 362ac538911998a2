#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "morn/geometry.hpp"

namespace morn {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

enum class Occupancy : std::uint8_t { Free = 0, Wall = 1 };

// Occupancy grid. Cells default to Wall.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, double cell_size);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  std::size_t cell_count() const { return cells_.size(); }

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool is_free(Cell c) const { return in_bounds(c) && cells_[index(c)] == Occupancy::Free; }
  void set(Cell c, Occupancy value);

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell_at(std::size_t i) const {
    return {static_cast<int>(i % static_cast<std::size_t>(width_)),
            static_cast<int>(i / static_cast<std::size_t>(width_))};
  }
  Point2 center(Cell c) const {
    return {(c.x + 0.5) * cell_size_, (c.y + 0.5) * cell_size_};
  }

  std::size_t free_count() const;

  // Border cells must be walls and at least one cell free; throws
  // std::invalid_argument otherwise.
  void validate() const;

  // One text row per grid row: '#' wall, '.' free.
  std::vector<std::string> rows() const;

  bool operator==(const GridMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 0.25;
  std::vector<Occupancy> cells_;
};

// 4-connected neighbour offsets in N, E, S, W order.
inline constexpr Cell kNeighbours[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};

inline Cell offset(Cell c, Cell d) { return {c.x + d.x, c.y + d.y}; }

// BFS step counts from `source` over free cells; -1 where unreachable.
std::vector<int> step_field(const GridMap& map, Cell source);

// Shortest 4-connected path length in metres, kUnreachable when the cells
// are disconnected. Throws std::invalid_argument if either cell is not free.
double geodesic_distance(const GridMap& map, Cell from, Cell to);

// Integer ray between cell centres. Every cell on the ray must be free;
// with `allow_blocked_target` the final cell may be a wall. The ray is
// always traced from the lexicographically smaller endpoint so the test is
// symmetric.
bool line_of_sight(const GridMap& map, Cell a, Cell b, bool allow_blocked_target = false);

// Plain-text scene: '#' wall, '.' free, 'S' spawn, '1'-'9' goals (free).
// Optional directive lines "@key value" may precede the grid.
struct FixtureScene {
  GridMap map;
  Cell spawn;
  std::map<int, Cell> goals;
  std::map<std::string, std::string> directives;
};

// Throws std::invalid_argument with a line-level message on malformed input.
FixtureScene parse_fixture(std::string_view text, double cell_size);
FixtureScene load_fixture_file(const std::string& path, double cell_size);

}  // namespace morn
