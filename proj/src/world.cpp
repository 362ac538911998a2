#include "morn/world.hpp"

#include <stdexcept>

namespace morn {

World::World(const EpisodeSpec& spec, const PerceptionParams& perception, const NavParams& nav)
    : spec_(&spec),
      perception_(spec.perception.value_or(perception)),
      navigator_(spec.map, spec.spawn, nav, perception_.base + perception_.amplitude / 2.0),
      perception_rng_(derive_seed(spec.seed, 0, kPerceptionStream)),
      navigator_rng_(derive_seed(spec.seed, 0, kNavigatorStream)) {
  validate(perception_);
  for (const GoalInstance& g : spec.goals) {
    if (!spec.map.is_free(g.position)) {
      throw std::invalid_argument("World: goal " + std::to_string(g.goal_id) + " is not on a free cell");
    }
    if (g.present) fields_.emplace(g.goal_id, step_field(spec.map, g.position));
  }
}

const GoalInstance& World::goal(int id) const {
  for (const GoalInstance& g : spec_->goals) {
    if (g.goal_id == id) return g;
  }
  throw std::invalid_argument("World: unknown goal " + std::to_string(id));
}

double World::distance(int goal, Cell pose) const {
  const auto it = fields_.find(goal);
  if (it == fields_.end()) return kUnreachable;
  const int steps = it->second[spec_->map.index(pose)];
  return steps < 0 ? kUnreachable : steps * spec_->map.cell_size();
}

std::map<int, Point2> World::goal_positions() const {
  std::map<int, Point2> out;
  for (const GoalInstance& g : spec_->goals) out.emplace(g.goal_id, spec_->map.center(g.position));
  return out;
}

StepObservation World::advance(int goal_id) {
  const GoalInstance& g = goal(goal_id);
  if (last_goal_ != goal_id) last_reading_.reset();
  StepObservation obs;
  obs.action = navigator_.step(goal_id, last_reading_, navigator_rng_);
  obs.pose = navigator_.pose();
  obs.mode = navigator_.state(goal_id).mode;
  obs.distance = distance(goal_id, obs.pose);
  obs.reading = emit_evidence(g, obs.pose, obs.distance, spec_->map, perception_, perception_rng_);
  last_goal_ = goal_id;
  last_reading_ = obs.reading;
  return obs;
}

}  // namespace morn
