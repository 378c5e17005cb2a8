#include "mats/grid.hpp"

#include <algorithm>

namespace mats {

double cell_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("cell_entropy: probability outside [0,1]");
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

OccupancyGrid::OccupancyGrid(GridDims dims, double initial)
    : dims_(dims), cells_(dims.cell_count(), initial) {
  if (dims.width < 1 || dims.height < 1 || dims.resolution <= 0.0) {
    throw std::invalid_argument("OccupancyGrid: invalid dims");
  }
}

void OccupancyGrid::set(Cell c, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("OccupancyGrid::set: probability outside [0,1]");
  }
  cells_[dims_.index(c)] = p;
}

double OccupancyGrid::total_entropy() const {
  double sum = 0.0;
  for (double p : cells_) sum += cell_entropy(p);
  return sum;
}

int OccupancyGrid::unknown_count() const {
  int n = 0;
  for (double p : cells_) {
    if (p > kKnownFreeMax && p < kKnownOccupiedMin) ++n;
  }
  return n;
}

FovFootprint fov_cells(Cell center, int range, const GridDims& dims) {
  if (!dims.contains(center)) {
    throw std::domain_error("fov_cells: pose outside map bounds");
  }
  if (range < 0) {
    throw std::domain_error("fov_cells: negative range");
  }
  FovFootprint fov;
  const int x0 = std::max(0, center.x - range);
  const int x1 = std::min(dims.width - 1, center.x + range);
  const int y0 = std::max(0, center.y - range);
  const int y1 = std::min(dims.height - 1, center.y + range);
  fov.cells.reserve(static_cast<size_t>(x1 - x0 + 1) * (y1 - y0 + 1));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      fov.cells.push_back({x, y});
    }
  }
  return fov;
}

Cell cell_of_pose(const Pose& pose, const GridDims& dims) {
  Cell c{static_cast<int>(std::floor(pose.x / dims.resolution)),
         static_cast<int>(std::floor(pose.y / dims.resolution))};
  c.x = std::clamp(c.x, 0, dims.width - 1);
  c.y = std::clamp(c.y, 0, dims.height - 1);
  return c;
}

FovFootprint fov_cells(const Pose& pose, int range, const GridDims& dims) {
  return fov_cells(cell_of_pose(pose, dims), range, dims);
}

void observe(OccupancyGrid& grid, const FovFootprint& fov, const ObstacleSet& truth) {
  for (Cell c : fov.cells) {
    grid.set(c, truth.contains(c) ? 1.0 : 0.0);
  }
}

void decay_to_unknown(OccupancyGrid& grid, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::domain_error("decay_to_unknown: beta outside [0,1]");
  }
  const auto& dims = grid.dims();
  for (int i = 0; i < dims.cell_count(); ++i) {
    double p = grid.at(i);
    grid.set(dims.cell(i), p + beta * (0.5 - p));
  }
}

void write_pgm(std::span<const double> values, GridDims dims, std::ostream& out,
               bool binary) {
  out << (binary ? "P5" : "P2") << "\n"
      << dims.width << " " << dims.height << "\n255\n";
  for (int y = 0; y < dims.height; ++y) {
    for (int x = 0; x < dims.width; ++x) {
      int v = static_cast<int>(std::lround(values[dims.index({x, y})] * 255.0));
      v = std::clamp(v, 0, 255);
      if (binary) {
        out.put(static_cast<char>(v));
      } else {
        out << v << (x + 1 == dims.width ? "\n" : " ");
      }
    }
  }
}

void write_pgm(const OccupancyGrid& grid, std::ostream& out, bool binary) {
  write_pgm(grid.cells(), grid.dims(), out, binary);
}

}  // namespace mats
