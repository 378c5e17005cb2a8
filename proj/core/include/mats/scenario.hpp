#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mats/belief.hpp"
#include "mats/grid.hpp"

namespace mats {

enum class Mode { Single, Continuous };

struct ObstacleRect {
  int x = 0, y = 0, w = 1, h = 1;  // cells, axis-aligned
  auto operator<=>(const ObstacleRect&) const = default;
};

struct AgentConfig {
  Pose start;
  double speed = 1.0;  // m/s
  int fov_range = 2;   // cells
  int rank = 0;
  SensorModel sensor;
};

struct TargetConfig {
  bool random_start = false;  // uniform over free cells, drawn from the run seed
  Cell start;
  MotionModel model;
};

struct DwaParams {
  double dt = 0.1;          // s
  double a_max = 0.5;       // m/s^2
  double alpha_max = M_PI;  // rad/s^2
  double w_max = M_PI;      // rad/s
  double sigma_h = 1.0;
  double sigma_c = 0.2;
  double sigma_v = 0.2;
  double sim_horizon = 1.0;  // s
  int v_samples = 7;
  int w_samples = 11;
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name;
  GridDims grid{13, 13, 1.0};
  std::vector<ObstacleRect> obstacles;
  std::vector<AgentConfig> agents;
  std::optional<TargetConfig> target;
  Mode mode = Mode::Single;
  int horizon = 300;       // planning horizon, steps
  int max_steps = 2000;
  double lambda = 0.1;     // utility cost weight
  double beta = 0.005;     // continuous-mode decay per step
  double epsilon_h = 0.05; // stop when entropy < epsilon_h * initial entropy
  int replan_interval = 20;
  double sample_period = 2.0;
  int min_cluster = 3;
  int min_cell_area = 4;
  DwaParams dwa;
};

struct ScenarioError : std::runtime_error {
  enum Kind { Parse, Validation };
  ScenarioError(Kind k, const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        kind(k),
        field(field) {}
  Kind kind;
  std::string field;
};

// Parses and validates a scenario file, filling documented defaults.
// Validation failures name the offending field ("agents[1].rank").
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& json_text);

std::string scenario_to_json(const ScenarioConfig& cfg);
void save_scenario(const ScenarioConfig& cfg, const std::string& path);
void validate_scenario(const ScenarioConfig& cfg);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

ObstacleSet build_obstacles(const ScenarioConfig& cfg);

// --agents override: keep the first n specs, or clone the last spec at
// seed-deterministic jittered collision-free starts to reach n.
void override_agent_count(ScenarioConfig& cfg, int n, std::uint64_t seed);

}  // namespace mats
