#pragma once

#include <cmath>
#include <compare>

namespace morn {

// Planar position in metres.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double euclidean(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Grid cell index; x is the column, y the row (row 0 is the first text line).
struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

}  // namespace morn
