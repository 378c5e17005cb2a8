#include "mats/waypoints.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace mats {

namespace {

struct Interval {
  int y0;
  int y1;  // inclusive
  auto operator<=>(const Interval&) const = default;
};

struct OpenRect {
  int x0;
  Interval iv;
};

}  // namespace

std::vector<Waypoint> sample_waypoints_vcd(const OccupancyGrid& grid, int min_cell_area) {
  const auto& dims = grid.dims();
  std::vector<Waypoint> out;
  std::map<Interval, int> open;  // interval -> first column

  auto close_rect = [&](const Interval& iv, int x0, int x1) {
    const int w = x1 - x0 + 1;
    const int h = iv.y1 - iv.y0 + 1;
    if (w * h < min_cell_area) return;
    Cell center{x0 + w / 2, iv.y0 + h / 2};
    if (grid.is_known_occupied(center)) return;  // stale decomposition
    out.push_back({center, WaypointKind::Global});
  };

  for (int x = 0; x <= dims.width; ++x) {
    std::vector<Interval> runs;
    if (x < dims.width) {
      int y = 0;
      while (y < dims.height) {
        if (grid.is_unknown({x, y})) {
          int y0 = y;
          while (y < dims.height && grid.is_unknown({x, y})) ++y;
          runs.push_back({y0, y - 1});
        } else {
          ++y;
        }
      }
    }
    std::map<Interval, int> next;
    for (const Interval& iv : runs) {
      auto it = open.find(iv);
      next[iv] = (it != open.end()) ? it->second : x;
      if (it != open.end()) open.erase(it);
    }
    for (const auto& [iv, x0] : open) close_rect(iv, x0, x - 1);
    open = std::move(next);
  }
  return out;
}

std::vector<FrontierCluster> get_frontiers(const OccupancyGrid& grid, int min_cluster) {
  const auto& dims = grid.dims();
  std::vector<std::uint8_t> frontier(dims.cell_count(), 0);
  for (int i = 0; i < dims.cell_count(); ++i) {
    const Cell c = dims.cell(i);
    if (!grid.is_known_free(c)) continue;
    const Cell nbrs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (const Cell& n : nbrs) {
      if (dims.contains(n) && grid.is_unknown(n)) {
        frontier[i] = 1;
        break;
      }
    }
  }

  std::vector<FrontierCluster> clusters;
  std::vector<std::uint8_t> seen(dims.cell_count(), 0);
  for (int i = 0; i < dims.cell_count(); ++i) {
    if (!frontier[i] || seen[i]) continue;
    FrontierCluster cluster;
    std::deque<int> queue{i};
    seen[i] = 1;
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      const Cell c = dims.cell(cur);
      cluster.cells.push_back(c);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const Cell n{c.x + dx, c.y + dy};
          if (!dims.contains(n)) continue;
          const int ni = dims.index(n);
          if (frontier[ni] && !seen[ni]) {
            seen[ni] = 1;
            queue.push_back(ni);
          }
        }
      }
    }
    if (static_cast<int>(cluster.cells.size()) < min_cluster) continue;

    double cx = 0.0, cy = 0.0;
    for (const Cell& c : cluster.cells) {
      cx += c.x;
      cy += c.y;
    }
    cx /= cluster.cells.size();
    cy /= cluster.cells.size();
    double best = std::numeric_limits<double>::infinity();
    int best_idx = -1;
    for (const Cell& c : cluster.cells) {
      const double d = (c.x - cx) * (c.x - cx) + (c.y - cy) * (c.y - cy);
      const int idx = dims.index(c);
      if (d < best - 1e-12 || (std::abs(d - best) <= 1e-12 && idx < best_idx)) {
        best = d;
        best_idx = idx;
      }
    }
    cluster.centroid_cell = dims.cell(best_idx);
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::vector<Waypoint> frontier_waypoints(const OccupancyGrid& grid, int min_cluster) {
  std::vector<Waypoint> out;
  for (const FrontierCluster& c : get_frontiers(grid, min_cluster)) {
    out.push_back({c.centroid_cell, WaypointKind::Local});
  }
  return out;
}

}  // namespace mats
