#include "morn/navigator.hpp"

#include <cmath>
#include <stdexcept>

namespace morn {

std::string_view to_string(NavMode mode) {
  return mode == NavMode::Explore ? "EXPLORE" : "APPROACH";
}

std::string_view to_string(PrimitiveAction action) {
  switch (action) {
    case PrimitiveAction::Stay: return "STAY";
    case PrimitiveAction::North: return "NORTH";
    case PrimitiveAction::East: return "EAST";
    case PrimitiveAction::South: return "SOUTH";
    case PrimitiveAction::West: return "WEST";
  }
  return "?";
}

void validate(const NavParams& p) {
  if (!(p.sensor_range > 0.0 && std::isfinite(p.sensor_range))) {
    throw std::invalid_argument("nav.sensor_range must be > 0");
  }
  if (p.approach_streak < 1) throw std::invalid_argument("nav.approach_streak must be >= 1");
}

Navigator::Navigator(const GridMap& map, Cell spawn, NavParams params, double trigger)
    : map_(&map), params_(params), trigger_(trigger), pose_(spawn) {
  validate(params_);
  if (!map.is_free(spawn)) throw std::invalid_argument("Navigator: spawn is not free");
  const std::vector<int> field = step_field(map, spawn);
  reachable_.assign(field.size(), 0);
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] >= 0) {
      reachable_[i] = 1;
      ++reachable_count_;
    }
  }
}

const std::vector<std::uint32_t>& Navigator::visible_from(Cell c) {
  const std::size_t key = map_->index(c);
  auto it = visibility_.find(key);
  if (it != visibility_.end()) return it->second;
  std::vector<std::uint32_t> cells;
  const double r = params_.sensor_range / map_->cell_size();
  const int ri = static_cast<int>(std::floor(r));
  for (int dy = -ri; dy <= ri; ++dy) {
    for (int dx = -ri; dx <= ri; ++dx) {
      const Cell t{c.x + dx, c.y + dy};
      if (dx * dx + dy * dy > r * r || !map_->is_free(t)) continue;
      if (line_of_sight(*map_, c, t)) cells.push_back(static_cast<std::uint32_t>(map_->index(t)));
    }
  }
  return visibility_.emplace(key, std::move(cells)).first->second;
}

void Navigator::observe(Memory& m) {
  for (std::uint32_t i : visible_from(pose_)) {
    if (m.seen[i]) continue;
    m.seen[i] = 1;
    if (reachable_[i]) ++m.seen_reachable;
  }
}

Navigator::Memory& Navigator::memory(int goal) {
  auto [it, inserted] = memory_.try_emplace(goal);
  if (inserted) {
    it->second.seen.assign(map_->cell_count(), 0);
    observe(it->second);
  }
  return it->second;
}

bool Navigator::is_frontier(const Memory& m, Cell c) const {
  if (!m.seen[map_->index(c)]) return false;
  for (Cell d : kNeighbours) {
    const Cell n = offset(c, d);
    if (map_->is_free(n) && !m.seen[map_->index(n)]) return true;
  }
  return false;
}

std::optional<Cell> Navigator::nearest_frontier(const Memory& m, Rng& rng) const {
  std::vector<std::uint8_t> visited(map_->cell_count(), 0);
  std::vector<Cell> level{pose_}, next, hits;
  visited[map_->index(pose_)] = 1;
  while (!level.empty()) {
    for (Cell c : level) {
      if (is_frontier(m, c)) hits.push_back(c);
    }
    if (!hits.empty()) return hits[rng.uniform_int(0, static_cast<int>(hits.size()) - 1)];
    next.clear();
    for (Cell c : level) {
      for (Cell d : kNeighbours) {
        const Cell n = offset(c, d);
        if (!map_->is_free(n) || visited[map_->index(n)]) continue;
        visited[map_->index(n)] = 1;
        next.push_back(n);
      }
    }
    level.swap(next);
  }
  return std::nullopt;
}

PrimitiveAction Navigator::descend(const std::vector<int>& field) {
  const int here = field[map_->index(pose_)];
  if (here <= 0) return PrimitiveAction::Stay;
  for (int k = 0; k < 4; ++k) {
    const Cell n = offset(pose_, kNeighbours[k]);
    if (!map_->is_free(n)) continue;
    const int v = field[map_->index(n)];
    if (v >= 0 && v < here) {
      pose_ = n;
      heading_ = k;
      return static_cast<PrimitiveAction>(k + 1);
    }
  }
  return PrimitiveAction::Stay;
}

PrimitiveAction Navigator::step(int goal, const std::optional<EvidenceReading>& last, Rng& rng) {
  Memory& m = memory(goal);
  if (last && last->source && last->score > trigger_) {
    ++m.streak;
    if (m.streak >= params_.approach_streak && m.believed_target != last->source) {
      std::vector<int> field = step_field(*map_, *last->source);
      if (field[map_->index(pose_)] >= 0) {
        m.mode = NavMode::Approach;
        m.believed_target = last->source;
        m.field = std::move(field);
      }
    }
  } else {
    m.streak = 0;
  }

  PrimitiveAction action = PrimitiveAction::Stay;
  if (m.mode == NavMode::Approach) {
    action = descend(m.field);
  } else {
    if (!m.frontier || !is_frontier(m, *m.frontier)) {
      m.frontier = nearest_frontier(m, rng);
      if (m.frontier) m.field = step_field(*map_, *m.frontier);
    }
    if (m.frontier) action = descend(m.field);
  }
  observe(m);
  return action;
}

NavigatorState Navigator::state(int goal) const {
  NavigatorState s{.pose = pose_, .heading = heading_};
  const auto it = memory_.find(goal);
  if (it != memory_.end()) {
    s.mode = it->second.mode;
    s.believed_target = it->second.believed_target;
  }
  s.coverage = coverage(goal);
  return s;
}

double Navigator::coverage(int goal) const {
  const auto it = memory_.find(goal);
  if (it == memory_.end() || reachable_count_ == 0) return 0.0;
  return static_cast<double>(it->second.seen_reachable) / static_cast<double>(reachable_count_);
}

}  // namespace morn
