#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mats/planner.hpp"
#include "mats/waypoints.hpp"

namespace mats {

struct Candidate {
  int agent = 0;
  ReparamPath path;
  Cell goal;
  double ig = 0.0;       // bits
  double cost = 0.0;
  double utility = 0.0;  // ig - cost
  bool hold = false;
};

// Cells already covered by higher-rank agents' selected paths this round.
class ClaimedCells {
 public:
  ClaimedCells() = default;
  explicit ClaimedCells(GridDims dims) : dims_(dims), mask_(dims.cell_count(), 0) {}

  bool contains(Cell c) const { return !mask_.empty() && mask_[dims_.index(c)] != 0; }
  void add(Cell c) { mask_[dims_.index(c)] = 1; }
  void add_fov_union(const ReparamPath& rp, int fov_range);
  int count() const;

 private:
  GridDims dims_;
  std::vector<std::uint8_t> mask_;
};

enum class IgMode {
  Union,         // each covered cell counted once (default)
  PerViewpoint,  // straight per-viewpoint FOV sum, overlaps counted twice
};

struct PlanConfig {
  double lambda = 0.1;         // travel-time weight in the utility
  double sample_period = 2.0;  // steps between viewpoint samples at unit speed
  int min_cluster = 3;
  int min_cell_area = 4;
  IgMode ig_mode = IgMode::Union;
  bool belief_weighted = false;  // scale cell entropy by normalized target mass
  bool audit = false;            // keep every scored candidate in PlanRound::audit
};

struct PlanRound {
  std::vector<Candidate> selections;  // one per agent, rank order
  std::vector<Candidate> audit;       // every scored candidate, when requested
};

struct NoCandidateError : std::runtime_error {
  NoCandidateError() : std::runtime_error("select_path: empty candidate list") {}
};

// Entropy summed over the viewpoints' FOV cells, minus claimed cells.
double information_gain(const ReparamPath& rp, const OccupancyGrid& grid,
                        const ClaimedCells& claimed, int fov_range,
                        IgMode mode = IgMode::Union,
                        const TargetBelief* belief = nullptr);

// Weighted travel time: lambda * steps / speed.
double path_cost(const ReparamPath& rp, const AgentSpec& spec, double lambda);

// Argmax utility; ties broken by lower cost, then lower candidate index.
const Candidate& select_path(std::span<const Candidate> candidates);

// One full sequential planning round: shared waypoints from cell
// decomposition and frontiers, then per agent in rank order plan, score
// against the claimed set, select, and claim the winner's coverage.
PlanRound plan_round(std::span<const AgentSpec> agents, std::span<const Pose> poses,
                     const OccupancyGrid& grid, int horizon,
                     const PlanConfig& cfg = {}, const TargetBelief* belief = nullptr);

}  // namespace mats
