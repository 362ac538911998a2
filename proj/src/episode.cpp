#include "morn/episode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "morn/rng.hpp"

namespace morn {

namespace {

constexpr std::array<const char*, 10> kCategories = {
    "chair", "bed", "toilet", "tv_monitor", "plant", "sofa", "sink", "oven", "bathtub", "table"};

bool same(const PerceptionParams& a, const PerceptionParams& b) {
  return a.base == b.base && a.noise_std == b.noise_std && a.amplitude == b.amplitude &&
         a.range == b.range && a.false_positive_rate == b.false_positive_rate &&
         a.detectability == b.detectability;
}

bool same(const GoalInstance& a, const GoalInstance& b) {
  return a.goal_id == b.goal_id && a.category == b.category && a.position == b.position &&
         a.detectability == b.detectability && a.present == b.present;
}

Cell random_cell(const Room& r, const GridMap& map, Rng& rng) {
  while (true) {
    const Cell c{rng.uniform_int(r.lo.x, r.hi.x), rng.uniform_int(r.lo.y, r.hi.y)};
    if (map.is_free(c)) return c;
  }
}

double separation(const GridMap& map, const std::vector<int>& field, Cell from, Cell to) {
  const int steps = field[map.index(to)];
  if (steps >= 0) return steps * map.cell_size();
  return euclidean(map.center(from), map.center(to));
}

}  // namespace

bool EpisodeSpec::operator==(const EpisodeSpec& o) const {
  if (goals.size() != o.goals.size()) return false;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (!same(goals[i], o.goals[i])) return false;
  }
  if (perception.has_value() != o.perception.has_value()) return false;
  if (perception && !same(*perception, *o.perception)) return false;
  return episode_id == o.episode_id && seed == o.seed && goal_count == o.goal_count &&
         budget_max == o.budget_max && source == o.source && map == o.map && spawn == o.spawn &&
         min_separation == o.min_separation && regenerations == o.regenerations;
}

void validate(const SuiteParams& p) {
  if (p.budget_k2 < 1 || p.budget_k3 < 1) throw std::invalid_argument("budget.k2/k3 must be >= 1");
  if (!(p.infeasible_fraction >= 0.0 && p.infeasible_fraction <= 1.0)) {
    throw std::invalid_argument("bench.infeasible_fraction must be in [0, 1]");
  }
  if (!(p.sealed_share >= 0.0 && p.sealed_share <= 1.0)) {
    throw std::invalid_argument("bench.sealed_share must be in [0, 1]");
  }
  if (!(p.min_separation >= 0.0)) throw std::invalid_argument("bench.min_separation must be >= 0");
  if (!(p.detectability >= 0.0 && p.detectability <= 1.0)) {
    throw std::invalid_argument("perception.detectability must be in [0, 1]");
  }
  if (p.max_placements < 1 || p.max_maps < 1) throw std::invalid_argument("retry limits must be >= 1");
  validate(p.map);
  if (p.map.rooms_x * p.map.rooms_y < 4) {
    throw std::invalid_argument("world.rooms_x * world.rooms_y must be >= 4");
  }
}

std::vector<EpisodeSpec> generate(int count_k2, int count_k3, std::uint64_t master_seed,
                                  const SuiteParams& p) {
  if (count_k2 < 0 || count_k3 < 0) throw std::invalid_argument("generate: negative episode count");
  validate(p);
  std::vector<EpisodeSpec> out;
  out.reserve(static_cast<std::size_t>(count_k2 + count_k3));
  const int n_rooms = p.map.rooms_x * p.map.rooms_y;

  for (int i = 0; i < count_k2 + count_k3; ++i) {
    const int k = i < count_k2 ? 2 : 3;
    EpisodeSpec spec{.episode_id = i,
                     .seed = derive_seed(master_seed, static_cast<std::uint64_t>(i)),
                     .goal_count = k,
                     .budget_max = k == 2 ? p.budget_k2 : p.budget_k3,
                     .source = "procedural",
                     .min_separation = p.min_separation};
    Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(i), 0));

    std::vector<bool> present(k, true), sealed(k, false);
    for (int g = 0; g < k; ++g) {
      if (!rng.bernoulli(p.infeasible_fraction)) continue;
      if (rng.bernoulli(p.sealed_share)) {
        sealed[g] = true;
      } else {
        present[g] = false;
      }
    }
    std::vector<int> categories(kCategories.size());
    for (std::size_t c = 0; c < categories.size(); ++c) categories[c] = static_cast<int>(c);
    for (int c = static_cast<int>(categories.size()) - 1; c > 0; --c) {
      std::swap(categories[c], categories[rng.uniform_int(0, c)]);
    }

    bool accepted = false;
    for (int attempt = 0; attempt < p.max_maps && !accepted; ++attempt) {
      std::vector<int> rooms(n_rooms);
      for (int r = 0; r < n_rooms; ++r) rooms[r] = r;
      for (int r = n_rooms - 1; r > 0; --r) std::swap(rooms[r], rooms[rng.uniform_int(0, r)]);
      std::vector<int> sealed_rooms;
      for (int g = 0; g < k; ++g) {
        if (sealed[g]) sealed_rooms.push_back(rooms[g]);
      }
      std::optional<GeneratedMap> gen = generate_map(p.map, sealed_rooms, rng);
      if (!gen) {
        ++spec.regenerations;
        continue;
      }

      for (int placement = 0; placement < p.max_placements && !accepted; ++placement) {
        const Cell spawn = random_cell(gen->rooms[rooms[k]], gen->map, rng);
        std::vector<Cell> cells(k);
        for (int g = 0; g < k; ++g) cells[g] = random_cell(gen->rooms[rooms[g]], gen->map, rng);

        const std::vector<int> from_spawn = step_field(gen->map, spawn);
        bool ok = true;
        for (int g = 0; g < k && ok; ++g) {
          const bool reachable = from_spawn[gen->map.index(cells[g])] >= 0;
          if (sealed[g] == reachable) ok = false;
          if (euclidean(gen->map.center(spawn), gen->map.center(cells[g])) < p.min_separation) ok = false;
        }
        for (int a = 0; a < k && ok; ++a) {
          const std::vector<int> field = step_field(gen->map, cells[a]);
          for (int b = a + 1; b < k && ok; ++b) {
            if (separation(gen->map, field, cells[a], cells[b]) < p.min_separation) ok = false;
          }
        }
        if (!ok) continue;

        spec.map = gen->map;
        spec.spawn = spawn;
        for (int g = 0; g < k; ++g) {
          spec.goals.push_back(GoalInstance{.goal_id = g + 1,
                                            .category = kCategories[categories[g]],
                                            .position = cells[g],
                                            .detectability = p.detectability,
                                            .present = present[g]});
        }
        accepted = true;
      }
      if (!accepted) ++spec.regenerations;
    }
    if (!accepted) {
      throw std::runtime_error("generate: episode " + std::to_string(i) +
                               " could not satisfy the separation constraint");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(x)) {
    throw std::invalid_argument("fixture directive @" + key + ": bad number '" + value + "'");
  }
  return x;
}

}  // namespace

EpisodeSpec fixture_episode(const FixtureScene& scene, const std::string& name, std::uint64_t seed,
                            const SuiteParams& params, const PerceptionParams& perception) {
  EpisodeSpec spec{.episode_id = 0,
                   .seed = seed,
                   .goal_count = static_cast<int>(scene.goals.size()),
                   .source = "fixture:" + name,
                   .map = scene.map,
                   .spawn = scene.spawn,
                   .min_separation = 0.0};
  spec.budget_max = spec.goal_count <= 2 ? params.budget_k2 : params.budget_k3;
  PerceptionParams pp = perception;
  bool override_perception = false;
  std::vector<int> absent;
  for (const auto& [key, value] : scene.directives) {
    if (key == "budget") {
      const double b = parse_number(key, value);
      if (b < 1 || b != std::floor(b)) throw std::invalid_argument("fixture directive @budget must be a positive integer");
      spec.budget_max = static_cast<long>(b);
    } else if (key == "absent") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const double id = parse_number(key, item);
        if (!scene.goals.contains(static_cast<int>(id))) {
          throw std::invalid_argument("fixture directive @absent: unknown goal " + item);
        }
        absent.push_back(static_cast<int>(id));
      }
    } else if (key == "noise") {
      pp.noise_std = parse_number(key, value);
      override_perception = true;
    } else if (key == "fpr") {
      pp.false_positive_rate = parse_number(key, value);
      override_perception = true;
    } else if (key == "detectability") {
      pp.detectability = parse_number(key, value);
      override_perception = true;
    } else {
      throw std::invalid_argument("fixture: unknown directive @" + key);
    }
  }
  validate(pp);
  if (override_perception) spec.perception = pp;
  for (const auto& [id, cell] : scene.goals) {
    spec.goals.push_back(GoalInstance{
        .goal_id = id,
        .category = "goal" + std::to_string(id),
        .position = cell,
        .detectability = pp.detectability,
        .present = std::find(absent.begin(), absent.end(), id) == absent.end()});
  }
  return spec;
}

EpisodeSpec load_fixture_episode(const std::string& dir, const std::string& name, std::uint64_t seed,
                                 const SuiteParams& params, const PerceptionParams& perception) {
  const FixtureScene scene = load_fixture_file(dir + "/" + name + ".txt", params.map.cell_size);
  return fixture_episode(scene, name, seed, params, perception);
}

}  // namespace morn
