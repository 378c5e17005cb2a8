#pragma once

#include <vector>

#include "mats/grid.hpp"

namespace mats {

enum class WaypointKind { Global, Local };

struct Waypoint {
  Cell cell;
  WaypointKind kind = WaypointKind::Global;
};

struct FrontierCluster {
  std::vector<Cell> cells;  // 8-connected frontier cells
  Cell centroid_cell;       // member nearest the arithmetic centroid
};

// Vertical cell decomposition of the unknown mask: sweep columns left to
// right, track maximal vertical runs of unknown cells, merge columns whose
// runs line up into rectangles, and emit one Global waypoint at each
// rectangle's center cell. Rectangles smaller than min_cell_area are dropped.
std::vector<Waypoint> sample_waypoints_vcd(const OccupancyGrid& grid,
                                           int min_cell_area = 4);

// Frontier cells are known-free cells with at least one unknown 4-neighbor,
// clustered by 8-connectivity; clusters below min_cluster cells are dropped.
std::vector<FrontierCluster> get_frontiers(const OccupancyGrid& grid,
                                           int min_cluster = 3);

// One Local waypoint per cluster, at the cluster's centroid cell.
std::vector<Waypoint> frontier_waypoints(const OccupancyGrid& grid, int min_cluster = 3);

}  // namespace mats
