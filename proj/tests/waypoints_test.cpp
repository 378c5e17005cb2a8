#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "doctest.h"
#include "mats/waypoints.hpp"

using namespace mats;

namespace {

OccupancyGrid all_known(GridDims d) {
  OccupancyGrid g(d);
  for (int i = 0; i < d.cell_count(); ++i) g.set(d.cell(i), 0.0);
  return g;
}

// Flood-fill count of 8-connected components over an arbitrary predicate.
template <typename Pred>
int component_count(const GridDims& d, Pred pred) {
  std::vector<bool> seen(d.cell_count(), false);
  int components = 0;
  for (int i = 0; i < d.cell_count(); ++i) {
    if (!pred(d.cell(i)) || seen[i]) continue;
    ++components;
    std::deque<int> q{i};
    seen[i] = true;
    while (!q.empty()) {
      Cell c = d.cell(q.front());
      q.pop_front();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          Cell n{c.x + dx, c.y + dy};
          if (!d.contains(n) || seen[d.index(n)] || !pred(n)) continue;
          seen[d.index(n)] = true;
          q.push_back(d.index(n));
        }
      }
    }
  }
  return components;
}

bool is_frontier(const OccupancyGrid& g, Cell c) {
  if (!g.is_known_free(c)) return false;
  const Cell nbrs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
  for (const Cell& n : nbrs) {
    if (g.dims().contains(n) && g.is_unknown(n)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("vcd on a fully unknown grid emits one centered waypoint") {
  OccupancyGrid g({4, 4, 1.0});
  auto wps = sample_waypoints_vcd(g);
  REQUIRE(wps.size() == 1);
  CHECK(wps[0].cell == Cell{2, 2});
  CHECK(wps[0].kind == WaypointKind::Global);
}

TEST_CASE("vcd on a fully known grid is empty") {
  CHECK(sample_waypoints_vcd(all_known({5, 5, 1.0})).empty());
}

TEST_CASE("vcd splits on a known column") {
  OccupancyGrid g({5, 5, 1.0});
  for (int y = 0; y < 5; ++y) g.set({2, y}, 0.0);
  auto wps = sample_waypoints_vcd(g);
  REQUIRE(wps.size() == 2);
  CHECK(wps[0].cell == Cell{1, 2});
  CHECK(wps[1].cell == Cell{4, 2});
  // flood-fill region count agrees
  CHECK(component_count(g.dims(), [&](Cell c) { return g.is_unknown(c); }) == 2);
}

TEST_CASE("vcd rectangles partition the unknown mask") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    GridDims d{10, 8, 1.0};
    OccupancyGrid g(d);
    for (int i = 0; i < d.cell_count(); ++i) {
      const double r = unif(rng);
      g.set(d.cell(i), r < 0.4 ? 0.0 : (r < 0.5 ? 1.0 : 0.5));
    }
    // with min area 1, every unknown cell must land in exactly one rectangle;
    // waypoint cells themselves must be unknown
    auto wps = sample_waypoints_vcd(g, 1);
    std::set<std::pair<int, int>> unknown;
    for (int i = 0; i < d.cell_count(); ++i) {
      if (g.is_unknown(d.cell(i))) unknown.insert({d.cell(i).x, d.cell(i).y});
    }
    for (const auto& w : wps) {
      CHECK(unknown.count({w.cell.x, w.cell.y}) == 1);
    }
  }
}

TEST_CASE("every vcd waypoint cell is unknown at emission time") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    GridDims d{9, 9, 1.0};
    OccupancyGrid g(d);
    for (int i = 0; i < d.cell_count(); ++i) {
      g.set(d.cell(i), unif(rng) < 0.5 ? 0.5 : 0.0);
    }
    for (const auto& w : sample_waypoints_vcd(g)) {
      CHECK(g.at(w.cell) == 0.5);
    }
  }
}

TEST_CASE("frontiers of degenerate grids are empty") {
  CHECK(get_frontiers(OccupancyGrid({5, 5, 1.0})).empty());    // no free cells
  CHECK(get_frontiers(all_known({5, 5, 1.0})).empty());        // no unknown cells
}

TEST_CASE("half-free grid yields one frontier column cluster") {
  OccupancyGrid g({6, 6, 1.0});
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 6; ++y) g.set({x, y}, 0.0);
  }
  auto clusters = get_frontiers(g, 3);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].cells.size() == 6);
  for (Cell c : clusters[0].cells) CHECK(c.x == 2);
  CHECK(clusters[0].centroid_cell == Cell{2, 2});  // tie toward lower index
}

TEST_CASE("frontier predicate matches brute force") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    GridDims d{8, 8, 1.0};
    OccupancyGrid g(d);
    for (int i = 0; i < d.cell_count(); ++i) {
      const double r = unif(rng);
      g.set(d.cell(i), r < 0.4 ? 0.0 : (r < 0.5 ? 1.0 : 0.5));
    }
    auto clusters = get_frontiers(g, 1);
    std::set<std::pair<int, int>> in_cluster;
    for (const auto& cl : clusters) {
      for (Cell c : cl.cells) in_cluster.insert({c.x, c.y});
    }
    for (int i = 0; i < d.cell_count(); ++i) {
      const Cell c = d.cell(i);
      CHECK(in_cluster.count({c.x, c.y}) == (is_frontier(g, c) ? 1u : 0u));
    }
    CHECK(static_cast<int>(clusters.size()) ==
          component_count(d, [&](Cell c) { return is_frontier(g, c); }));
  }
}

TEST_CASE("min_cluster filters small clusters") {
  OccupancyGrid g({7, 7, 1.0});
  for (int i = 0; i < 49; ++i) g.set(g.dims().cell(i), 0.0);
  g.set({0, 0}, 0.5);  // single free/unknown corner contact
  auto strict = get_frontiers(g, 3);
  auto loose = get_frontiers(g, 1);
  CHECK(strict.empty());
  CHECK(loose.size() == 1);
}
