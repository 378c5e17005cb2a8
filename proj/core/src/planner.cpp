#include "mats/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace mats {

std::optional<Path> astar(const OccupancyGrid& grid, Cell start, Cell goal) {
  const auto& dims = grid.dims();
  if (!grid.traversable(start) || !grid.traversable(goal)) return std::nullopt;
  if (start == goal) return Path{{start}};

  auto h = [&](Cell c) { return std::abs(c.x - goal.x) + std::abs(c.y - goal.y); };

  // (f, x, y) min-heap; lower x then y expands first among equal f.
  using Entry = std::tuple<int, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::vector<int> g(dims.cell_count(), std::numeric_limits<int>::max());
  std::vector<int> parent(dims.cell_count(), -1);
  std::vector<std::uint8_t> closed(dims.cell_count(), 0);

  g[dims.index(start)] = 0;
  open.push({h(start), start.x, start.y});

  while (!open.empty()) {
    auto [f, x, y] = open.top();
    open.pop();
    const Cell c{x, y};
    const int ci = dims.index(c);
    if (closed[ci]) continue;
    closed[ci] = 1;
    if (c == goal) break;

    const Cell nbrs[4] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    for (const Cell& n : nbrs) {
      if (!dims.contains(n) || !grid.traversable(n)) continue;
      const int ni = dims.index(n);
      const int ng = g[ci] + 1;
      if (ng < g[ni]) {
        g[ni] = ng;
        parent[ni] = ci;
        open.push({ng + h(n), n.x, n.y});
      }
    }
  }

  const int goal_idx = dims.index(goal);
  if (g[goal_idx] == std::numeric_limits<int>::max()) return std::nullopt;

  Path path;
  for (int i = goal_idx; i != -1; i = parent[i]) path.cells.push_back(dims.cell(i));
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

ReparamPath reparameterize(const Path& path, const AgentSpec& spec, int horizon,
                           double sample_period) {
  ReparamPath rp;
  rp.ds = std::max(1, static_cast<int>(std::lround(spec.speed * sample_period)));

  const int reach = static_cast<int>(std::floor(spec.speed * horizon));
  const int prefix_steps = std::min(path.steps(), std::max(0, reach));
  rp.source.cells.assign(path.cells.begin(), path.cells.begin() + prefix_steps + 1);

  const int count = std::max(1, (prefix_steps + rp.ds - 1) / rp.ds);
  rp.viewpoints.reserve(count);
  for (int k = 0; k < count; ++k) {
    rp.viewpoints.push_back(rp.source.cells[std::min(k * rp.ds, prefix_steps)]);
  }
  return rp;
}

}  // namespace mats
