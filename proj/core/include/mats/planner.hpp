#pragma once

#include <optional>
#include <vector>

#include "mats/belief.hpp"
#include "mats/grid.hpp"

namespace mats {

struct AgentSpec {
  int id = 0;
  int rank = 0;          // 0 = leader
  double speed = 1.0;    // cells per step
  int fov_range = 2;     // cells
  SensorModel sensor;
};

struct Path {
  std::vector<Cell> cells;  // start..goal, consecutive cells 4-adjacent
  int steps() const { return static_cast<int>(cells.size()) - 1; }
};

struct ReparamPath {
  Path source;                   // horizon-truncated prefix of the planned path
  std::vector<Cell> viewpoints;  // sampled every ds steps, starting at step 0
  int ds = 1;
};

// Minimum-step 4-connected path with unit step cost and Manhattan heuristic.
// Known-occupied cells block; unknown cells are traversable. Ties are broken
// by expanding the lower (x, then y) cell first. Returns nullopt when the
// goal is unreachable.
std::optional<Path> astar(const OccupancyGrid& grid, Cell start, Cell goal);

// Speed-aware viewpoint sampling: the path is truncated to the prefix
// reachable within the horizon (speed * horizon steps), then sampled every
// ds = max(1, round(speed * sample_period)) steps.
ReparamPath reparameterize(const Path& path, const AgentSpec& spec, int horizon,
                           double sample_period = 2.0);

}  // namespace mats
