#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mats/grid.hpp"

namespace mats {

enum class MotionKind { Static, ConstVel };

struct MotionModel {
  MotionKind kind = MotionKind::Static;
  double vx = 0.0;     // cells per step (ConstVel only)
  double vy = 0.0;
  double sigma = 0.0;  // isotropic diffusion std-dev, cells
};

struct SensorModel {
  double p_detect = 0.9;  // P(detect | target in FOV)
  double p_false = 0.0;   // P(spurious detection per step | target outside FOV)
};

struct Observation {
  int agent = 0;
  FovFootprint fov;
  bool detected = false;
  Cell cell;  // meaningful only when detected; must lie inside fov
};

// Thrown when a correction wipes out all posterior mass; the caller resets
// the belief to uniform over unknown cells.
struct DegeneratePosterior : std::runtime_error {
  DegeneratePosterior() : std::runtime_error("degenerate posterior: zero total mass") {}
};

// Discrete (histogram-filter) probability distribution over grid cells.
class TargetBelief {
 public:
  TargetBelief() = default;

  static TargetBelief uniform(GridDims dims);
  static TargetBelief delta(GridDims dims, Cell c);
  // Equal mass on every unknown cell; falls back to known-free cells when no
  // unknown cell exists. Throws std::domain_error when neither exists.
  static TargetBelief uniform_unknown(const OccupancyGrid& grid);

  const GridDims& dims() const { return dims_; }
  double at(Cell c) const { return mass_[dims_.index(c)]; }
  double at(int idx) const { return mass_[idx]; }
  void set(Cell c, double m) { mass_[dims_.index(c)] = m; }
  double sum() const;
  void normalize();  // throws DegeneratePosterior when sum is zero
  std::span<const double> mass() const { return mass_; }
  std::span<double> mass_mut() { return mass_; }

 private:
  TargetBelief(GridDims dims, double fill) : dims_(dims), mass_(dims.cell_count(), fill) {}
  GridDims dims_;
  std::vector<double> mass_;
};

// Motion update: shift by V (ConstVel; fractional shifts split bilinearly),
// then convolve with a Gaussian kernel truncated at 3*sigma. Mass falling
// outside the map is kept by renormalizing each source cell's in-map kernel.
TargetBelief predict(const TargetBelief& belief, const MotionModel& model);

// Measurement update per one agent's observation. Likelihoods:
//   NotDetected: (1 - p_detect) inside the FOV, (1 - p_false) outside.
//   Detected(c): p_detect on c, p_false everywhere else.
TargetBelief correct(const TargetBelief& belief, const Observation& obs,
                     const SensorModel& sensor);

// Same-step joint correction factored per agent; order-invariant.
TargetBelief correct_all(const TargetBelief& belief, std::span<const Observation> obs,
                         std::span<const SensorModel> sensors);

}  // namespace mats
