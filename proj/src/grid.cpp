#include "morn/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace morn {

GridMap::GridMap(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size) {
  if (width < 3 || height < 3) throw std::invalid_argument("GridMap: grid must be at least 3x3");
  if (!(cell_size > 0.0)) throw std::invalid_argument("GridMap: cell_size must be > 0");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                Occupancy::Wall);
}

void GridMap::set(Cell c, Occupancy value) {
  if (!in_bounds(c)) throw std::out_of_range("GridMap::set: cell outside grid");
  cells_[index(c)] = value;
}

std::size_t GridMap::free_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Occupancy::Free));
}

void GridMap::validate() const {
  for (int x = 0; x < width_; ++x) {
    if (is_free({x, 0}) || is_free({x, height_ - 1})) {
      throw std::invalid_argument("GridMap: border cells must be walls");
    }
  }
  for (int y = 0; y < height_; ++y) {
    if (is_free({0, y}) || is_free({width_ - 1, y})) {
      throw std::invalid_argument("GridMap: border cells must be walls");
    }
  }
  if (free_count() == 0) throw std::invalid_argument("GridMap: no free cells");
}

std::vector<std::string> GridMap::rows() const {
  std::vector<std::string> out(static_cast<std::size_t>(height_), std::string(width_, '#'));
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (is_free({x, y})) out[y][x] = '.';
    }
  }
  return out;
}

std::vector<int> step_field(const GridMap& map, Cell source) {
  std::vector<int> dist(map.cell_count(), -1);
  if (!map.is_free(source)) return dist;
  std::vector<Cell> frontier{source};
  std::vector<Cell> next;
  dist[map.index(source)] = 0;
  for (int d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (Cell c : frontier) {
      for (Cell n : kNeighbours) {
        const Cell m = offset(c, n);
        if (!map.is_free(m)) continue;
        int& slot = dist[map.index(m)];
        if (slot >= 0) continue;
        slot = d;
        next.push_back(m);
      }
    }
    frontier.swap(next);
  }
  return dist;
}

double geodesic_distance(const GridMap& map, Cell from, Cell to) {
  if (!map.is_free(from) || !map.is_free(to)) {
    throw std::invalid_argument("geodesic_distance: endpoint is not a free cell");
  }
  const int steps = step_field(map, from)[map.index(to)];
  return steps < 0 ? kUnreachable : steps * map.cell_size();
}

bool line_of_sight(const GridMap& map, Cell a, Cell b, bool allow_blocked_target) {
  const Cell target = b;
  if (b < a) std::swap(a, b);
  const int dx = std::abs(b.x - a.x);
  const int dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  Cell c = a;
  while (true) {
    if (!map.is_free(c) && !(allow_blocked_target && c == target)) return false;
    if (c == b) return true;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      c.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      c.y += sy;
    }
  }
}

FixtureScene parse_fixture(std::string_view text, double cell_size) {
  FixtureScene scene;
  std::vector<std::string> grid;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!grid.empty()) break;
      continue;
    }
    if (line.front() == '@') {
      if (!grid.empty()) {
        throw std::invalid_argument("fixture line " + std::to_string(line_no) +
                                    ": directive after grid rows");
      }
      const auto space = line.find(' ');
      const std::string key = line.substr(1, space == std::string::npos ? std::string::npos : space - 1);
      const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
      if (key.empty()) {
        throw std::invalid_argument("fixture line " + std::to_string(line_no) + ": empty directive");
      }
      scene.directives[key] = value;
      continue;
    }
    if (!grid.empty() && line.size() != grid.front().size()) {
      throw std::invalid_argument("fixture line " + std::to_string(line_no) +
                                  ": row width differs from the first row");
    }
    grid.push_back(line);
  }
  if (grid.empty()) throw std::invalid_argument("fixture: no grid rows");

  const int height = static_cast<int>(grid.size());
  const int width = static_cast<int>(grid.front().size());
  scene.map = GridMap(width, height, cell_size);
  bool have_spawn = false;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const char ch = grid[y][x];
      const Cell c{x, y};
      if (ch == '#') continue;
      if (ch == '.') {
        scene.map.set(c, Occupancy::Free);
      } else if (ch == 'S') {
        if (have_spawn) throw std::invalid_argument("fixture: more than one spawn");
        have_spawn = true;
        scene.spawn = c;
        scene.map.set(c, Occupancy::Free);
      } else if (ch >= '1' && ch <= '9') {
        const int id = ch - '0';
        if (!scene.goals.emplace(id, c).second) {
          throw std::invalid_argument(std::string("fixture: goal ") + ch + " appears twice");
        }
        scene.map.set(c, Occupancy::Free);
      } else {
        throw std::invalid_argument("fixture row " + std::to_string(y + 1) + ": unexpected '" +
                                    std::string(1, ch) + "'");
      }
    }
  }
  if (!have_spawn) throw std::invalid_argument("fixture: missing spawn 'S'");
  if (scene.goals.empty()) throw std::invalid_argument("fixture: no goals");
  scene.map.validate();
  return scene;
}

FixtureScene load_fixture_file(const std::string& path, double cell_size) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fixture file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixture(buf.str(), cell_size);
}

}  // namespace morn
