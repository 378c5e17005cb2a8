#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mats/scenario.hpp"
#include "mats/selection.hpp"

namespace mats {

struct AgentState {
  AgentSpec spec;    // speed in cells/step (converted from m/s)
  double speed_mps;  // kinematic limit for DWA
  Pose pose;
  double v = 0.0;  // m/s
  double w = 0.0;  // rad/s
  Candidate plan;  // current selection (hold until the first round)
  size_t path_index = 0;
  double plan_ig = 0.0;  // IG at selection time, for the replan trigger
};

struct TargetState {
  double x = 0.0;  // cells (continuous; reflects off map bounds)
  double y = 0.0;
  MotionModel model;
  bool found = false;
  Cell cell() const {
    return {static_cast<int>(std::floor(x)), static_cast<int>(std::floor(y))};
  }
};

struct Metrics {
  std::vector<double> entropy_trace;            // one entry per step
  std::vector<std::vector<Pose>> trajectories;  // per agent, one pose per step
  std::optional<int> search_time;               // steps to detection
  double entropy_reduction_rate = 0.0;          // bits per step
  std::vector<double> plan_latencies_ms;        // wall time per plan_round
};

// Samples (v, w) pairs reachable within one control step, rejects pairs whose
// forward-simulated arc hits a known-occupied cell or leaves the map, and
// maximizes sigma_h*heading + sigma_c*clearance + sigma_v*velocity.
// Returns (0, alpha_max*dt) rotate-in-place when every sample collides.
std::pair<double, double> dwa_control(const AgentState& agent, double goal_x,
                                      double goal_y, const OccupancyGrid& grid,
                                      const DwaParams& p);

class World {
 public:
  World(const ScenarioConfig& cfg, std::uint64_t seed);

  void step();
  bool done() const;
  int clock() const { return clock_; }

  const OccupancyGrid& grid() const { return grid_; }
  const TargetBelief& belief() const { return belief_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  const std::optional<TargetState>& target() const { return target_; }
  const Metrics& metrics() const { return metrics_; }
  double initial_entropy() const { return initial_entropy_; }

 private:
  void replan();
  bool replan_due() const;
  void advance_agent(AgentState& agent);
  void move_target();
  double uniform01();

  ScenarioConfig cfg_;
  OccupancyGrid grid_;
  ObstacleSet truth_;
  TargetBelief belief_;
  std::vector<AgentState> agents_;
  std::optional<TargetState> target_;
  std::vector<SensorModel> sensors_;
  int clock_ = 0;
  int last_plan_ = -1;
  bool planned_once_ = false;
  std::mt19937_64 rng_;
  double initial_entropy_ = 0.0;
  Metrics metrics_;
};

Metrics run(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace mats
