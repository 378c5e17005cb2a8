#include "mats/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mats {

namespace {

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

void integrate_unicycle(Pose& p, double v, double w, double dt) {
  p.x += v * std::cos(p.heading) * dt;
  p.y += v * std::sin(p.heading) * dt;
  p.heading = wrap_angle(p.heading + w * dt);
}

bool pose_collides(const Pose& p, const OccupancyGrid& grid) {
  const auto& dims = grid.dims();
  if (p.x < 0.0 || p.y < 0.0 || p.x >= dims.width * dims.resolution ||
      p.y >= dims.height * dims.resolution) {
    return true;
  }
  const Cell c{static_cast<int>(std::floor(p.x / dims.resolution)),
               static_cast<int>(std::floor(p.y / dims.resolution))};
  return grid.is_known_occupied(c);
}

// Distance from a pose to the nearest known-occupied cell center within a
// 3-cell neighborhood, capped at 3 cells.
double clearance_at(const Pose& p, const OccupancyGrid& grid) {
  const auto& dims = grid.dims();
  const double res = dims.resolution;
  const Cell c{static_cast<int>(std::floor(p.x / res)),
               static_cast<int>(std::floor(p.y / res))};
  const double cap = 3.0 * res;
  double best = cap;
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      const Cell n{c.x + dx, c.y + dy};
      if (!dims.contains(n) || !grid.is_known_occupied(n)) continue;
      const double cx = (n.x + 0.5) * res;
      const double cy = (n.y + 0.5) * res;
      best = std::min(best, std::hypot(cx - p.x, cy - p.y));
    }
  }
  return best;
}

}  // namespace

std::pair<double, double> dwa_control(const AgentState& agent, double goal_x,
                                      double goal_y, const OccupancyGrid& grid,
                                      const DwaParams& p) {
  const double v_lo = std::max(0.0, agent.v - p.a_max * p.dt);
  const double v_hi = std::min(agent.speed_mps, agent.v + p.a_max * p.dt);
  const double w_lo = std::max(-p.w_max, agent.w - p.alpha_max * p.dt);
  const double w_hi = std::min(p.w_max, agent.w + p.alpha_max * p.dt);
  const int n_sub = std::max(1, static_cast<int>(std::lround(p.sim_horizon / p.dt)));
  const double cap = 3.0 * grid.dims().resolution;

  double best_score = -std::numeric_limits<double>::infinity();
  std::pair<double, double> best{0.0, p.alpha_max * p.dt};
  bool any_valid = false;

  for (int i = 0; i < p.v_samples; ++i) {
    const double v = v_lo + (v_hi - v_lo) * i / (p.v_samples - 1);
    for (int j = 0; j < p.w_samples; ++j) {
      const double w = w_lo + (w_hi - w_lo) * j / (p.w_samples - 1);

      Pose sim = agent.pose;
      bool collides = false;
      double clearance = cap;
      for (int k = 0; k < n_sub; ++k) {
        integrate_unicycle(sim, v, w, p.dt);
        if (pose_collides(sim, grid)) {
          collides = true;
          break;
        }
        clearance = std::min(clearance, clearance_at(sim, grid));
      }
      if (collides) continue;
      any_valid = true;

      const double bearing = std::atan2(goal_y - sim.y, goal_x - sim.x);
      const double heading = 1.0 - std::abs(wrap_angle(bearing - sim.heading)) / M_PI;
      const double score = p.sigma_h * heading + p.sigma_c * clearance / cap +
                           p.sigma_v * v / std::max(agent.speed_mps, 1e-9);
      if (score > best_score) {
        best_score = score;
        best = {v, w};
      }
    }
  }
  if (!any_valid) return {0.0, p.alpha_max * p.dt};
  return best;
}

World::World(const ScenarioConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      grid_(cfg.grid, 0.5),
      truth_(build_obstacles(cfg)),
      rng_(seed) {
  validate_scenario(cfg_);

  for (size_t i = 0; i < cfg_.agents.size(); ++i) {
    const AgentConfig& ac = cfg_.agents[i];
    AgentState st;
    st.spec.id = static_cast<int>(i);
    st.spec.rank = ac.rank;
    st.spec.speed = ac.speed * cfg_.dwa.dt / cfg_.grid.resolution;  // cells/step
    st.spec.fov_range = ac.fov_range;
    st.spec.sensor = ac.sensor;
    st.speed_mps = ac.speed;
    st.pose = ac.start;
    st.plan.agent = st.spec.id;
    st.plan.hold = true;
    st.plan.path.source.cells = {cell_of_pose(st.pose, cfg_.grid)};
    agents_.push_back(st);
    sensors_.push_back(ac.sensor);
  }

  if (cfg_.target) {
    TargetState ts;
    ts.model = cfg_.target->model;
    Cell start = cfg_.target->start;
    if (cfg_.target->random_start) {
      std::vector<Cell> free;
      for (int i = 0; i < cfg_.grid.cell_count(); ++i) {
        const Cell c = cfg_.grid.cell(i);
        if (!truth_.contains(c)) free.push_back(c);
      }
      start = free[static_cast<size_t>(uniform01() * free.size()) % free.size()];
    }
    ts.x = start.x + 0.5;
    ts.y = start.y + 0.5;
    target_ = ts;
  }

  belief_ = TargetBelief::uniform_unknown(grid_);
  initial_entropy_ = grid_.total_entropy();
  metrics_.trajectories.resize(agents_.size());
}

double World::uniform01() { return (rng_() >> 11) * 0x1.0p-53; }

bool World::done() const {
  if (cfg_.mode == Mode::Continuous) return clock_ >= cfg_.max_steps;
  if (clock_ >= cfg_.max_steps) return true;
  if (target_ && target_->found) return true;
  return grid_.total_entropy() < cfg_.epsilon_h * initial_entropy_;
}

bool World::replan_due() const {
  if (!planned_once_) return true;
  if (clock_ - last_plan_ >= cfg_.replan_interval) return true;
  for (const AgentState& a : agents_) {
    if (a.plan.hold) return true;
    if (a.path_index + 1 >= a.plan.path.source.cells.size()) return true;
    // Residual gain of the viewpoints not yet passed, against the live map.
    ReparamPath rest;
    rest.ds = a.plan.path.ds;
    rest.source = a.plan.path.source;
    for (size_t k = 0; k < a.plan.path.viewpoints.size(); ++k) {
      if (k * static_cast<size_t>(a.plan.path.ds) >= a.path_index) {
        rest.viewpoints.push_back(a.plan.path.viewpoints[k]);
      }
    }
    if (rest.viewpoints.empty()) return true;
    const double residual =
        information_gain(rest, grid_, ClaimedCells(cfg_.grid), a.spec.fov_range);
    if (residual < 0.1 * a.plan_ig) return true;
  }
  return false;
}

void World::replan() {
  std::vector<AgentSpec> specs;
  std::vector<Pose> poses;
  for (const AgentState& a : agents_) {
    specs.push_back(a.spec);
    poses.push_back(a.pose);
  }
  PlanConfig pc;
  pc.lambda = cfg_.lambda;
  pc.sample_period = cfg_.sample_period;
  pc.min_cluster = cfg_.min_cluster;
  pc.min_cell_area = cfg_.min_cell_area;

  const auto t0 = std::chrono::steady_clock::now();
  PlanRound round = plan_round(specs, poses, grid_, cfg_.horizon, pc, &belief_);
  const auto t1 = std::chrono::steady_clock::now();
  metrics_.plan_latencies_ms.push_back(
      std::chrono::duration<double, std::milli>(t1 - t0).count());

  for (const Candidate& sel : round.selections) {
    AgentState& a = agents_[sel.agent];
    a.plan = sel;
    a.path_index = 0;
    a.plan_ig = sel.ig;
  }
  last_plan_ = clock_;
  planned_once_ = true;
}

void World::advance_agent(AgentState& agent) {
  const auto& cells = agent.plan.path.source.cells;
  if (agent.plan.hold || cells.size() <= 1) {
    agent.v = 0.0;
    agent.w = 0.0;
    return;
  }
  const double res = cfg_.grid.resolution;
  auto center_x = [&](Cell c) { return (c.x + 0.5) * res; };
  auto center_y = [&](Cell c) { return (c.y + 0.5) * res; };

  while (agent.path_index + 1 < cells.size() &&
         (cell_of_pose(agent.pose, cfg_.grid) == cells[agent.path_index] ||
          std::hypot(center_x(cells[agent.path_index]) - agent.pose.x,
                     center_y(cells[agent.path_index]) - agent.pose.y) < 0.4 * res)) {
    ++agent.path_index;
  }
  const Cell goal = cells[agent.path_index];
  auto [v, w] = dwa_control(agent, center_x(goal), center_y(goal), grid_, cfg_.dwa);
  agent.v = v;
  agent.w = w;

  Pose next = agent.pose;
  integrate_unicycle(next, v, w, cfg_.dwa.dt);
  if (!pose_collides(next, grid_)) {
    agent.pose = next;
  } else {
    agent.v = 0.0;  // rejected motion; rotate in place next step
  }
}

void World::move_target() {
  if (!target_ || target_->model.kind != MotionKind::ConstVel) return;
  TargetState& t = *target_;
  double nx = t.x + t.model.vx;
  double ny = t.y + t.model.vy;
  const double w = cfg_.grid.width;
  const double h = cfg_.grid.height;
  if (nx < 0.0 || nx >= w) {
    t.model.vx = -t.model.vx;
    nx = std::clamp(nx < 0.0 ? -nx : 2.0 * w - nx, 0.0, std::nextafter(w, 0.0));
  }
  if (ny < 0.0 || ny >= h) {
    t.model.vy = -t.model.vy;
    ny = std::clamp(ny < 0.0 ? -ny : 2.0 * h - ny, 0.0, std::nextafter(h, 0.0));
  }
  const Cell nc{static_cast<int>(std::floor(nx)), static_cast<int>(std::floor(ny))};
  if (truth_.contains(nc)) {
    t.model.vx = -t.model.vx;
    t.model.vy = -t.model.vy;
    return;  // bounce off the obstacle, stay put this step
  }
  t.x = nx;
  t.y = ny;
}

void World::step() {
  if (cfg_.mode == Mode::Single && target_ && target_->found) {
    ++clock_;  // terminal absorbing state
    return;
  }

  // 1. sensing
  std::vector<Observation> observations;
  bool true_positive = false;
  for (AgentState& a : agents_) {
    const FovFootprint fov = fov_cells(a.pose, a.spec.fov_range, cfg_.grid);
    observe(grid_, fov, truth_);

    Observation obs;
    obs.agent = a.spec.id;
    obs.fov = fov;
    const bool target_in_fov =
        target_ && std::binary_search(fov.cells.begin(), fov.cells.end(),
                                      target_->cell(), [](Cell l, Cell r) {
                                        return std::pair(l.y, l.x) < std::pair(r.y, r.x);
                                      });
    if (target_in_fov) {
      if (uniform01() < a.spec.sensor.p_detect) {
        obs.detected = true;
        obs.cell = target_->cell();
        true_positive = true;
      }
    } else if (a.spec.sensor.p_false > 0.0 && uniform01() < a.spec.sensor.p_false) {
      obs.detected = true;
      obs.cell = fov.cells[static_cast<size_t>(uniform01() * fov.cells.size()) %
                           fov.cells.size()];
    }
    observations.push_back(std::move(obs));
  }

  // 2. belief correction, then prediction
  try {
    belief_ = correct_all(belief_, observations, sensors_);
  } catch (const DegeneratePosterior&) {
    belief_ = TargetBelief::uniform_unknown(grid_);
  }
  const MotionModel model = target_ ? target_->model : MotionModel{};
  belief_ = predict(belief_, model);

  // 3. map forgetting (continuous search only)
  if (cfg_.mode == Mode::Continuous) decay_to_unknown(grid_, cfg_.beta);

  // 4. replanning
  if (replan_due()) replan();

  // 5. motion
  for (AgentState& a : agents_) advance_agent(a);

  // 6. target motion
  move_target();

  // 7. bookkeeping
  if (true_positive && target_ && !target_->found) {
    target_->found = true;
    metrics_.search_time = clock_ + 1;
  }
  metrics_.entropy_trace.push_back(grid_.total_entropy());
  for (size_t i = 0; i < agents_.size(); ++i) {
    metrics_.trajectories[i].push_back(agents_[i].pose);
  }
  ++clock_;
}

Metrics run(const ScenarioConfig& cfg, std::uint64_t seed) {
  World world(cfg, seed);
  while (!world.done()) world.step();

  Metrics m = world.metrics();
  const double h0 = world.initial_entropy();
  const double h1 = m.entropy_trace.empty() ? h0 : m.entropy_trace.back();
  m.entropy_reduction_rate = (h0 - h1) / std::max(1, world.clock());
  return m;
}

}  // namespace mats
