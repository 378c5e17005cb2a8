#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace mats {

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

struct GridDims {
  int width = 0;
  int height = 0;
  double resolution = 1.0;  // meters per cell

  bool contains(Cell c) const {
    return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
  }
  int index(Cell c) const { return c.y * width + c.x; }
  Cell cell(int idx) const { return {idx % width, idx / width}; }
  int cell_count() const { return width * height; }
  auto operator<=>(const GridDims&) const = default;
};

struct Pose {
  double x = 0.0;        // meters
  double y = 0.0;        // meters
  double heading = 0.0;  // radians, (-pi, pi]
};

struct FovFootprint {
  std::vector<Cell> cells;  // sorted by (y, x)
};

// Ground-truth obstacle mask, fixed for a run.
class ObstacleSet {
 public:
  ObstacleSet() = default;
  explicit ObstacleSet(GridDims dims) : dims_(dims), mask_(dims.cell_count(), 0) {}

  void add(Cell c) { mask_[dims_.index(c)] = 1; }
  bool contains(Cell c) const { return dims_.contains(c) && mask_[dims_.index(c)] != 0; }
  const GridDims& dims() const { return dims_; }

 private:
  GridDims dims_;
  std::vector<std::uint8_t> mask_;
};

// Binary Shannon entropy in bits, 0*log2(0) = 0. Throws std::domain_error
// outside [0,1].
double cell_entropy(double p);

// Occupancy classification thresholds. Pristine grids only hold 0.0 / 0.5 /
// 1.0; the bands exist so that cells decayed back toward 0.5 in continuous
// mode re-enter the unknown class once enough certainty is lost.
inline constexpr double kKnownFreeMax = 0.25;
inline constexpr double kKnownOccupiedMin = 0.75;

class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  explicit OccupancyGrid(GridDims dims, double initial = 0.5);

  const GridDims& dims() const { return dims_; }
  double at(Cell c) const { return cells_[dims_.index(c)]; }
  double at(int idx) const { return cells_[idx]; }
  void set(Cell c, double p);

  bool is_known_free(Cell c) const { return at(c) <= kKnownFreeMax; }
  bool is_known_occupied(Cell c) const { return at(c) >= kKnownOccupiedMin; }
  bool is_unknown(Cell c) const { return !is_known_free(c) && !is_known_occupied(c); }
  bool traversable(Cell c) const { return dims_.contains(c) && !is_known_occupied(c); }

  double total_entropy() const;
  int unknown_count() const;
  std::span<const double> cells() const { return cells_; }

 private:
  GridDims dims_;
  std::vector<double> cells_;
};

// Square footprint of side 2*range+1 centered on the given cell, clipped to
// the map bounds.
FovFootprint fov_cells(Cell center, int range, const GridDims& dims);
FovFootprint fov_cells(const Pose& pose, int range, const GridDims& dims);

Cell cell_of_pose(const Pose& pose, const GridDims& dims);

// Noiseless occupancy sensing: every footprint cell snaps to 1.0 if the
// ground truth has an obstacle there, 0.0 otherwise.
void observe(OccupancyGrid& grid, const FovFootprint& fov, const ObstacleSet& truth);

// Continuous-search forgetting: p <- p + beta * (0.5 - p) for every cell.
void decay_to_unknown(OccupancyGrid& grid, double beta);

// Portable graymap snapshot, one pixel per cell, value round(p*255).
void write_pgm(const OccupancyGrid& grid, std::ostream& out, bool binary = false);
void write_pgm(std::span<const double> values, GridDims dims, std::ostream& out,
               bool binary = false);

}  // namespace mats
