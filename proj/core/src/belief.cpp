#include "mats/belief.hpp"

#include <algorithm>
#include <cmath>

namespace mats {

TargetBelief TargetBelief::uniform(GridDims dims) {
  return TargetBelief(dims, 1.0 / dims.cell_count());
}

TargetBelief TargetBelief::delta(GridDims dims, Cell c) {
  TargetBelief b(dims, 0.0);
  b.set(c, 1.0);
  return b;
}

TargetBelief TargetBelief::uniform_unknown(const OccupancyGrid& grid) {
  const auto& dims = grid.dims();
  TargetBelief b(dims, 0.0);
  std::vector<int> support;
  for (int i = 0; i < dims.cell_count(); ++i) {
    if (grid.is_unknown(dims.cell(i))) support.push_back(i);
  }
  if (support.empty()) {
    for (int i = 0; i < dims.cell_count(); ++i) {
      if (grid.is_known_free(dims.cell(i))) support.push_back(i);
    }
  }
  if (support.empty()) {
    throw std::domain_error("uniform_unknown: no unknown and no free cells");
  }
  const double m = 1.0 / support.size();
  for (int i : support) b.mass_[i] = m;
  return b;
}

double TargetBelief::sum() const {
  double s = 0.0;
  for (double m : mass_) s += m;
  return s;
}

void TargetBelief::normalize() {
  const double s = sum();
  if (s <= 0.0) throw DegeneratePosterior();
  for (double& m : mass_) m /= s;
}

namespace {

// Distributes mass from a source cell over destination offsets with in-map
// renormalization, so no probability leaks over the boundary.
void scatter(const GridDims& dims, std::span<const double> src, std::span<double> dst,
             const std::vector<std::pair<Cell, double>>& offsets) {
  for (int i = 0; i < dims.cell_count(); ++i) {
    const double m = src[i];
    if (m == 0.0) continue;
    const Cell from = dims.cell(i);
    double in_map = 0.0;
    for (const auto& [off, w] : offsets) {
      if (dims.contains({from.x + off.x, from.y + off.y})) in_map += w;
    }
    if (in_map <= 0.0) {
      dst[i] += m;  // everything would leave the map; target stays put
      continue;
    }
    for (const auto& [off, w] : offsets) {
      Cell to{from.x + off.x, from.y + off.y};
      if (dims.contains(to)) dst[dims.index(to)] += m * w / in_map;
    }
  }
}

std::vector<std::pair<Cell, double>> shift_offsets(double vx, double vy) {
  const int x0 = static_cast<int>(std::floor(vx));
  const int y0 = static_cast<int>(std::floor(vy));
  const double fx = vx - x0;
  const double fy = vy - y0;
  std::vector<std::pair<Cell, double>> offsets;
  for (int dy = 0; dy <= 1; ++dy) {
    for (int dx = 0; dx <= 1; ++dx) {
      const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy);
      if (w > 0.0) offsets.push_back({{x0 + dx, y0 + dy}, w});
    }
  }
  return offsets;
}

std::vector<std::pair<Cell, double>> gaussian_offsets(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<std::pair<Cell, double>> offsets;
  double total = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      offsets.push_back({{dx, dy}, w});
      total += w;
    }
  }
  for (auto& [off, w] : offsets) w /= total;
  return offsets;
}

}  // namespace

TargetBelief predict(const TargetBelief& belief, const MotionModel& model) {
  const bool shifts = model.kind == MotionKind::ConstVel && (model.vx != 0.0 || model.vy != 0.0);
  if (!shifts && model.sigma == 0.0) {
    return belief;  // exact identity, bitwise
  }
  const auto& dims = belief.dims();
  TargetBelief out = belief;
  std::fill(out.mass_mut().begin(), out.mass_mut().end(), 0.0);
  std::vector<double> work(dims.cell_count(), 0.0);

  std::span<const double> src = belief.mass();
  if (shifts) {
    scatter(dims, src, work, shift_offsets(model.vx, model.vy));
    src = work;
  }
  if (model.sigma > 0.0) {
    scatter(dims, src, out.mass_mut(), gaussian_offsets(model.sigma));
  } else {
    std::copy(src.begin(), src.end(), out.mass_mut().begin());
  }
  out.normalize();
  return out;
}

TargetBelief correct(const TargetBelief& belief, const Observation& obs,
                     const SensorModel& sensor) {
  const auto& dims = belief.dims();
  TargetBelief out = belief;
  auto mass = out.mass_mut();
  if (obs.detected) {
    for (double& m : mass) m *= sensor.p_false;
    const int idx = dims.index(obs.cell);
    mass[idx] = belief.at(idx) * sensor.p_detect;
  } else {
    std::vector<std::uint8_t> in_fov(dims.cell_count(), 0);
    for (Cell c : obs.fov.cells) in_fov[dims.index(c)] = 1;
    for (int i = 0; i < dims.cell_count(); ++i) {
      mass[i] *= in_fov[i] ? (1.0 - sensor.p_detect) : (1.0 - sensor.p_false);
    }
  }
  out.normalize();
  return out;
}

TargetBelief correct_all(const TargetBelief& belief, std::span<const Observation> obs,
                         std::span<const SensorModel> sensors) {
  TargetBelief out = belief;
  for (const Observation& o : obs) {
    out = correct(out, o, sensors[o.agent]);
  }
  return out;
}

}  // namespace mats
