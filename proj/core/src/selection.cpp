#include "mats/selection.hpp"

#include <algorithm>
#include <cmath>

namespace mats {

void ClaimedCells::add_fov_union(const ReparamPath& rp, int fov_range) {
  for (const Cell& vp : rp.viewpoints) {
    for (const Cell& c : fov_cells(vp, fov_range, dims_).cells) add(c);
  }
}

int ClaimedCells::count() const {
  int n = 0;
  for (auto v : mask_) n += v;
  return n;
}

namespace {

double cell_score(const OccupancyGrid& grid, Cell c, const TargetBelief* belief,
                  double belief_max) {
  double s = cell_entropy(grid.at(c));
  if (belief != nullptr && belief_max > 0.0) {
    s *= belief->at(c) / belief_max;
  }
  return s;
}

}  // namespace

double information_gain(const ReparamPath& rp, const OccupancyGrid& grid,
                        const ClaimedCells& claimed, int fov_range, IgMode mode,
                        const TargetBelief* belief) {
  const auto& dims = grid.dims();
  double belief_max = 0.0;
  if (belief != nullptr) {
    for (double m : belief->mass()) belief_max = std::max(belief_max, m);
  }

  double ig = 0.0;
  if (mode == IgMode::PerViewpoint) {
    for (const Cell& vp : rp.viewpoints) {
      for (const Cell& c : fov_cells(vp, fov_range, dims).cells) {
        if (!claimed.contains(c)) ig += cell_score(grid, c, belief, belief_max);
      }
    }
    return ig;
  }

  std::vector<std::uint8_t> counted(dims.cell_count(), 0);
  for (const Cell& vp : rp.viewpoints) {
    for (const Cell& c : fov_cells(vp, fov_range, dims).cells) {
      const int i = dims.index(c);
      if (counted[i] || claimed.contains(c)) continue;
      counted[i] = 1;
      ig += cell_score(grid, c, belief, belief_max);
    }
  }
  return ig;
}

double path_cost(const ReparamPath& rp, const AgentSpec& spec, double lambda) {
  return lambda * rp.source.steps() / spec.speed;
}

const Candidate& select_path(std::span<const Candidate> candidates) {
  if (candidates.empty()) throw NoCandidateError();
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    const Candidate& a = candidates[i];
    const Candidate& b = candidates[best];
    if (a.utility > b.utility || (a.utility == b.utility && a.cost < b.cost)) {
      best = i;
    }
  }
  return candidates[best];
}

PlanRound plan_round(std::span<const AgentSpec> agents, std::span<const Pose> poses,
                     const OccupancyGrid& grid, int horizon, const PlanConfig& cfg,
                     const TargetBelief* belief) {
  const auto& dims = grid.dims();

  std::vector<Waypoint> waypoints = sample_waypoints_vcd(grid, cfg.min_cell_area);
  for (const Waypoint& w : frontier_waypoints(grid, cfg.min_cluster)) {
    waypoints.push_back(w);
  }
  // Small leftover pockets fall below the area/cluster thresholds; without a
  // goal the search would stall before the entropy floor, so re-run with the
  // filters off when nothing survived.
  if (waypoints.empty() && grid.unknown_count() > 0) {
    waypoints = sample_waypoints_vcd(grid, 1);
    for (const Waypoint& w : frontier_waypoints(grid, 1)) waypoints.push_back(w);
  }

  std::vector<size_t> order(agents.size());
  for (size_t i = 0; i < agents.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return agents[a].rank < agents[b].rank; });

  PlanRound round;
  ClaimedCells claimed(dims);
  const TargetBelief* b = cfg.belief_weighted ? belief : nullptr;

  for (size_t idx : order) {
    const AgentSpec& spec = agents[idx];
    const Cell start = cell_of_pose(poses[idx], dims);

    std::vector<Candidate> candidates;
    for (const Waypoint& w : waypoints) {
      auto path = astar(grid, start, w.cell);
      if (!path) continue;
      Candidate cand;
      cand.agent = spec.id;
      cand.goal = w.cell;
      cand.path = reparameterize(*path, spec, horizon, cfg.sample_period);
      cand.ig = information_gain(cand.path, grid, claimed, spec.fov_range, cfg.ig_mode, b);
      cand.cost = path_cost(cand.path, spec, cfg.lambda);
      cand.utility = cand.ig - cand.cost;
      candidates.push_back(std::move(cand));
    }
    if (cfg.audit) {
      round.audit.insert(round.audit.end(), candidates.begin(), candidates.end());
    }

    Candidate chosen;
    if (candidates.empty()) {
      chosen.agent = spec.id;
      chosen.goal = start;
      chosen.path = reparameterize(Path{{start}}, spec, horizon, cfg.sample_period);
      chosen.hold = true;
    } else {
      chosen = select_path(candidates);
    }
    claimed.add_fov_union(chosen.path, spec.fov_range);
    round.selections.push_back(std::move(chosen));
  }
  return round;
}

}  // namespace mats
