#include "mats/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mats {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ScenarioError(ScenarioError::Validation, field, what);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (auto it = j.find(key); it != j.end()) return it->get<T>();
  return fallback;
}

Pose parse_pose(const json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(),
          get_or<double>(j, "heading", 0.0)};
}

MotionModel parse_motion(const json& j) {
  MotionModel m;
  const std::string kind = get_or<std::string>(j, "kind", "static");
  if (kind == "static") {
    m.kind = MotionKind::Static;
  } else if (kind == "const_vel") {
    m.kind = MotionKind::ConstVel;
    m.vx = get_or<double>(j, "vx", 0.0);
    m.vy = get_or<double>(j, "vy", 0.0);
  } else {
    throw ScenarioError(ScenarioError::Validation, "target.model.kind",
                        "expected \"static\" or \"const_vel\"");
  }
  m.sigma = get_or<double>(j, "sigma", 0.0);
  return m;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ScenarioError(ScenarioError::Parse, "", e.what());
  }

  ScenarioConfig cfg;
  try {
    cfg.schema_version = get_or<int>(j, "schema_version", 1);
    cfg.name = get_or<std::string>(j, "name", "");

    const json& g = j.at("grid");
    cfg.grid = {g.at("width").get<int>(), g.at("height").get<int>(),
                get_or<double>(g, "resolution", 1.0)};

    for (const json& o : get_or<json>(j, "obstacles", json::array())) {
      cfg.obstacles.push_back({o.at("x").get<int>(), o.at("y").get<int>(),
                               o.at("w").get<int>(), o.at("h").get<int>()});
    }

    for (const json& a : j.at("agents")) {
      AgentConfig ac;
      ac.start = parse_pose(a.at("start"));
      ac.speed = get_or<double>(a, "speed", 1.0);
      ac.fov_range = get_or<int>(a, "fov_range", 2);
      ac.rank = get_or<int>(a, "rank", static_cast<int>(cfg.agents.size()));
      if (auto it = a.find("sensor"); it != a.end()) {
        ac.sensor.p_detect = get_or<double>(*it, "p_detect", 0.9);
        ac.sensor.p_false = get_or<double>(*it, "p_false", 0.0);
      }
      cfg.agents.push_back(ac);
    }

    if (auto it = j.find("target"); it != j.end() && !it->is_null()) {
      TargetConfig tc;
      if (it->contains("start") && (*it)["start"].is_string()) {
        require((*it)["start"].get<std::string>() == "random", "target.start",
                "expected cell object or \"random\"");
        tc.random_start = true;
      } else if (it->contains("start")) {
        tc.start = {(*it)["start"].at("i").get<int>(), (*it)["start"].at("j").get<int>()};
      } else {
        tc.random_start = true;
      }
      if (auto mit = it->find("model"); mit != it->end()) tc.model = parse_motion(*mit);
      cfg.target = tc;
    }

    const std::string mode = get_or<std::string>(j, "mode", "single");
    if (mode == "single") {
      cfg.mode = Mode::Single;
    } else if (mode == "continuous") {
      cfg.mode = Mode::Continuous;
    } else {
      throw ScenarioError(ScenarioError::Validation, "mode",
                          "expected \"single\" or \"continuous\"");
    }

    cfg.horizon = get_or<int>(j, "horizon", cfg.horizon);
    cfg.max_steps = get_or<int>(j, "max_steps", cfg.max_steps);
    cfg.lambda = get_or<double>(j, "lambda", cfg.lambda);
    cfg.beta = get_or<double>(j, "beta", cfg.beta);
    cfg.epsilon_h = get_or<double>(j, "epsilon_h", cfg.epsilon_h);
    cfg.replan_interval = get_or<int>(j, "replan_interval", cfg.replan_interval);
    cfg.sample_period = get_or<double>(j, "sample_period", cfg.sample_period);
    cfg.min_cluster = get_or<int>(j, "min_cluster", cfg.min_cluster);
    cfg.min_cell_area = get_or<int>(j, "min_cell_area", cfg.min_cell_area);

    if (auto it = j.find("dwa"); it != j.end()) {
      DwaParams& d = cfg.dwa;
      d.dt = get_or<double>(*it, "dt", d.dt);
      d.a_max = get_or<double>(*it, "a_max", d.a_max);
      d.alpha_max = get_or<double>(*it, "alpha_max", d.alpha_max);
      d.w_max = get_or<double>(*it, "w_max", d.w_max);
      d.sigma_h = get_or<double>(*it, "sigma_h", d.sigma_h);
      d.sigma_c = get_or<double>(*it, "sigma_c", d.sigma_c);
      d.sigma_v = get_or<double>(*it, "sigma_v", d.sigma_v);
      d.sim_horizon = get_or<double>(*it, "sim_horizon", d.sim_horizon);
      d.v_samples = get_or<int>(*it, "v_samples", d.v_samples);
      d.w_samples = get_or<int>(*it, "w_samples", d.w_samples);
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const json::exception& e) {
    throw ScenarioError(ScenarioError::Parse, "", e.what());
  }

  validate_scenario(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(ScenarioError::Parse, "", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void validate_scenario(const ScenarioConfig& cfg) {
  require(cfg.schema_version == 1, "schema_version", "unsupported schema version");
  require(cfg.grid.width >= 1, "grid.width", "must be >= 1");
  require(cfg.grid.height >= 1, "grid.height", "must be >= 1");
  require(cfg.grid.resolution > 0.0, "grid.resolution", "must be > 0");

  ObstacleSet truth = build_obstacles(cfg);
  for (size_t i = 0; i < cfg.obstacles.size(); ++i) {
    const auto& o = cfg.obstacles[i];
    const std::string f = "obstacles[" + std::to_string(i) + "]";
    require(o.w >= 1 && o.h >= 1, f, "zero-size rectangle");
    require(o.x >= 0 && o.y >= 0 && o.x + o.w <= cfg.grid.width &&
                o.y + o.h <= cfg.grid.height,
            f, "rectangle outside grid");
  }

  require(!cfg.agents.empty(), "agents", "at least one agent required");
  std::set<int> ranks;
  for (size_t i = 0; i < cfg.agents.size(); ++i) {
    const AgentConfig& a = cfg.agents[i];
    const std::string f = "agents[" + std::to_string(i) + "]";
    require(a.speed > 0.0, f + ".speed", "must be > 0");
    require(a.fov_range >= 0, f + ".fov_range", "must be >= 0");
    require(a.sensor.p_detect > 0.0 && a.sensor.p_detect <= 1.0, f + ".sensor.p_detect",
            "must be in (0,1]");
    require(a.sensor.p_false >= 0.0 && a.sensor.p_false < a.sensor.p_detect,
            f + ".sensor.p_false", "must satisfy 0 <= p_false < p_detect");
    require(ranks.insert(a.rank).second, f + ".rank", "duplicate rank");
    const double w = cfg.grid.width * cfg.grid.resolution;
    const double h = cfg.grid.height * cfg.grid.resolution;
    require(a.start.x >= 0.0 && a.start.x < w && a.start.y >= 0.0 && a.start.y < h,
            f + ".start", "outside map bounds");
    require(!truth.contains(cell_of_pose(a.start, cfg.grid)), f + ".start",
            "inside an obstacle");
  }
  for (int r = 0; r < static_cast<int>(cfg.agents.size()); ++r) {
    require(ranks.count(r) == 1, "agents", "ranks must be a permutation of 0..n-1");
  }

  if (cfg.target && !cfg.target->random_start) {
    require(cfg.grid.contains(cfg.target->start), "target.start", "outside grid");
    require(!truth.contains(cfg.target->start), "target.start", "inside an obstacle");
  }
  if (cfg.target) {
    require(cfg.target->model.sigma >= 0.0, "target.model.sigma", "must be >= 0");
  }

  require(cfg.horizon > 0, "horizon", "must be > 0");
  require(cfg.max_steps >= 0, "max_steps", "must be >= 0");
  require(cfg.lambda >= 0.0, "lambda", "must be >= 0");
  require(cfg.beta >= 0.0 && cfg.beta <= 1.0, "beta", "must be in [0,1]");
  require(cfg.epsilon_h > 0.0 && cfg.epsilon_h < 1.0, "epsilon_h", "must be in (0,1)");
  require(cfg.replan_interval >= 1, "replan_interval", "must be >= 1");
  require(cfg.sample_period > 0.0, "sample_period", "must be > 0");
  require(cfg.min_cluster >= 1, "min_cluster", "must be >= 1");
  require(cfg.min_cell_area >= 1, "min_cell_area", "must be >= 1");
  require(cfg.dwa.dt > 0.0, "dwa.dt", "must be > 0");
  require(cfg.dwa.v_samples >= 2 && cfg.dwa.w_samples >= 2, "dwa.v_samples",
          "need at least 2 samples per axis");
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  if (!cfg.name.empty()) j["name"] = cfg.name;
  j["grid"] = {{"width", cfg.grid.width},
               {"height", cfg.grid.height},
               {"resolution", cfg.grid.resolution}};
  j["obstacles"] = json::array();
  for (const auto& o : cfg.obstacles) {
    j["obstacles"].push_back({{"x", o.x}, {"y", o.y}, {"w", o.w}, {"h", o.h}});
  }
  j["agents"] = json::array();
  for (const auto& a : cfg.agents) {
    j["agents"].push_back(
        {{"start", {{"x", a.start.x}, {"y", a.start.y}, {"heading", a.start.heading}}},
         {"speed", a.speed},
         {"fov_range", a.fov_range},
         {"rank", a.rank},
         {"sensor", {{"p_detect", a.sensor.p_detect}, {"p_false", a.sensor.p_false}}}});
  }
  if (cfg.target) {
    json t;
    if (cfg.target->random_start) {
      t["start"] = "random";
    } else {
      t["start"] = {{"i", cfg.target->start.x}, {"j", cfg.target->start.y}};
    }
    t["model"] = {{"kind", cfg.target->model.kind == MotionKind::Static ? "static"
                                                                        : "const_vel"},
                  {"vx", cfg.target->model.vx},
                  {"vy", cfg.target->model.vy},
                  {"sigma", cfg.target->model.sigma}};
    j["target"] = t;
  } else {
    j["target"] = nullptr;
  }
  j["mode"] = cfg.mode == Mode::Single ? "single" : "continuous";
  j["horizon"] = cfg.horizon;
  j["max_steps"] = cfg.max_steps;
  j["lambda"] = cfg.lambda;
  j["beta"] = cfg.beta;
  j["epsilon_h"] = cfg.epsilon_h;
  j["replan_interval"] = cfg.replan_interval;
  j["sample_period"] = cfg.sample_period;
  j["min_cluster"] = cfg.min_cluster;
  j["min_cell_area"] = cfg.min_cell_area;
  j["dwa"] = {{"dt", cfg.dwa.dt},
              {"a_max", cfg.dwa.a_max},
              {"alpha_max", cfg.dwa.alpha_max},
              {"w_max", cfg.dwa.w_max},
              {"sigma_h", cfg.dwa.sigma_h},
              {"sigma_c", cfg.dwa.sigma_c},
              {"sigma_v", cfg.dwa.sigma_v},
              {"sim_horizon", cfg.dwa.sim_horizon},
              {"v_samples", cfg.dwa.v_samples},
              {"w_samples", cfg.dwa.w_samples}};
  return j.dump(2) + "\n";
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioError(ScenarioError::Parse, "", "cannot write " + path);
  out << scenario_to_json(cfg);
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  return scenario_to_json(a) == scenario_to_json(b);
}

ObstacleSet build_obstacles(const ScenarioConfig& cfg) {
  ObstacleSet set(cfg.grid);
  for (const auto& o : cfg.obstacles) {
    for (int y = o.y; y < o.y + o.h && y < cfg.grid.height; ++y) {
      for (int x = o.x; x < o.x + o.w && x < cfg.grid.width; ++x) {
        if (x >= 0 && y >= 0) set.add({x, y});
      }
    }
  }
  return set;
}

void override_agent_count(ScenarioConfig& cfg, int n, std::uint64_t seed) {
  require(n >= 1, "agents", "agent count override must be >= 1");
  if (n <= static_cast<int>(cfg.agents.size())) {
    cfg.agents.resize(n);
    // Keep ranks a permutation of 0..n-1 in original order.
    std::vector<size_t> order(cfg.agents.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return cfg.agents[a].rank < cfg.agents[b].rank;
    });
    for (int r = 0; r < n; ++r) cfg.agents[order[r]].rank = r;
    return;
  }

  ObstacleSet truth = build_obstacles(cfg);
  const AgentConfig base = cfg.agents.back();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  while (static_cast<int>(cfg.agents.size()) < n) {
    AgentConfig clone = base;
    clone.rank = static_cast<int>(cfg.agents.size());
    const double w = cfg.grid.width * cfg.grid.resolution;
    const double h = cfg.grid.height * cfg.grid.resolution;
    for (int attempt = 0; attempt < 256; ++attempt) {
      const double r = cfg.grid.resolution * (1.0 + attempt / 32.0);
      clone.start.x = std::clamp(base.start.x + uniform(-r, r), 0.01, w - 0.01);
      clone.start.y = std::clamp(base.start.y + uniform(-r, r), 0.01, h - 0.01);
      if (!truth.contains(cell_of_pose(clone.start, cfg.grid))) break;
    }
    cfg.agents.push_back(clone);
  }
}

}  // namespace mats
