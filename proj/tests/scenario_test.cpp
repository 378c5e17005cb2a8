#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mats/artifacts.hpp"
#include "mats/batch.hpp"
#include "mats/scenario.hpp"

using namespace mats;

namespace {

const char* kMinimal = R"({
  "grid": {"width": 8, "height": 8},
  "agents": [{"start": {"x": 1.0, "y": 1.0}}],
  "target": {"start": {"i": 6, "j": 6}}
})";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimal scenario fills documented defaults") {
  ScenarioConfig cfg = parse_scenario(kMinimal);
  CHECK(cfg.schema_version == 1);
  CHECK(cfg.grid.resolution == 1.0);
  CHECK(cfg.agents.size() == 1);
  CHECK(cfg.agents[0].speed == 1.0);
  CHECK(cfg.agents[0].fov_range == 2);
  CHECK(cfg.agents[0].rank == 0);
  CHECK(cfg.agents[0].sensor.p_detect == 0.9);
  CHECK(cfg.agents[0].sensor.p_false == 0.0);
  CHECK(cfg.mode == Mode::Single);
  CHECK(cfg.lambda == 0.1);
  CHECK(cfg.beta == 0.005);
  CHECK(cfg.epsilon_h == 0.05);
  CHECK(cfg.replan_interval == 20);
  CHECK(cfg.target.has_value());
  CHECK(!cfg.target->random_start);
}

TEST_CASE("parse errors and validation errors are distinguished") {
  CHECK_THROWS_AS(parse_scenario("{not json"), ScenarioError);
  try {
    parse_scenario("{not json");
  } catch (const ScenarioError& e) {
    CHECK(e.kind == ScenarioError::Parse);
  }

  const char* dup_rank = R"({
    "grid": {"width": 8, "height": 8},
    "agents": [
      {"start": {"x": 1.0, "y": 1.0}, "rank": 0},
      {"start": {"x": 2.0, "y": 2.0}, "rank": 0}
    ]
  })";
  try {
    parse_scenario(dup_rank);
    FAIL("expected validation error");
  } catch (const ScenarioError& e) {
    CHECK(e.kind == ScenarioError::Validation);
    CHECK(e.field == "agents[1].rank");
  }
}

TEST_CASE("validation names the offending field") {
  auto field_of = [](const char* text) {
    try {
      parse_scenario(text);
    } catch (const ScenarioError& e) {
      return e.field;
    }
    return std::string("<no error>");
  };

  CHECK(field_of(R"({"grid": {"width": 0, "height": 8},
                     "agents": [{"start": {"x": 0.5, "y": 0.5}}]})") == "grid.width");
  CHECK(field_of(R"({"grid": {"width": 8, "height": 8},
                     "agents": [{"start": {"x": 99.0, "y": 1.0}}]})") ==
        "agents[0].start");
  CHECK(field_of(R"({"grid": {"width": 8, "height": 8},
                     "agents": [{"start": {"x": 1.0, "y": 1.0}, "speed": -1}]})") ==
        "agents[0].speed");
  CHECK(field_of(R"({"grid": {"width": 8, "height": 8}, "agents": [],
                     "target": null})") == "agents");
  CHECK(field_of(R"({"grid": {"width": 8, "height": 8},
                     "agents": [{"start": {"x": 1.0, "y": 1.0}}],
                     "target": {"start": {"i": 20, "j": 0}}})") == "target.start");
}

TEST_CASE("scenario round-trips through save/load") {
  ScenarioConfig cfg = parse_scenario(kMinimal);
  cfg.obstacles.push_back({2, 2, 2, 1});
  cfg.mode = Mode::Continuous;
  cfg.beta = 0.01;
  validate_scenario(cfg);

  ScenarioConfig again = parse_scenario(scenario_to_json(cfg));
  CHECK(again == cfg);
  CHECK(scenario_to_json(again) == scenario_to_json(cfg));
}

TEST_CASE("shipped fig4 scenario matches the 13x13 sweep setup") {
  ScenarioConfig cfg = load_scenario(std::string(SCENARIO_DIR) + "/fig4.json");
  CHECK(cfg.grid.width == 13);
  CHECK(cfg.grid.height == 13);
  CHECK(cfg.agents[0].speed == 1.0);
  CHECK(cfg.target->random_start);
  CHECK(cfg.obstacles.empty());
}

TEST_CASE("shipped scenarios all validate") {
  for (const char* name : {"fig2a", "fig2b", "fig2c", "fig2d", "fig4", "ahg"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_scenario(std::string(SCENARIO_DIR) + "/" + name + ".json"));
  }
}

TEST_CASE("ahg scenario is heterogeneous-speed and runs to detection deterministically") {
  ScenarioConfig cfg = load_scenario(std::string(SCENARIO_DIR) + "/ahg.json");
  CHECK(cfg.agents.size() == 2);
  CHECK(cfg.agents[0].speed != cfg.agents[1].speed);

  Metrics a = run(cfg, 7);
  Metrics b = run(cfg, 7);
  REQUIRE(a.search_time.has_value());
  CHECK(a.search_time == b.search_time);
  CHECK(a.entropy_trace == b.entropy_trace);
}

TEST_CASE("agent count override") {
  ScenarioConfig cfg = parse_scenario(kMinimal);

  ScenarioConfig grown = cfg;
  override_agent_count(grown, 3, 42);
  CHECK(grown.agents.size() == 3);
  validate_scenario(grown);  // ranks still a permutation, starts collision-free

  ScenarioConfig same1 = cfg, same2 = cfg;
  override_agent_count(same1, 3, 42);
  override_agent_count(same2, 3, 42);
  CHECK(same1.agents[2].start.x == same2.agents[2].start.x);  // seed-deterministic

  ScenarioConfig shrunk = grown;
  override_agent_count(shrunk, 2, 0);
  CHECK(shrunk.agents.size() == 2);
  validate_scenario(shrunk);
}

TEST_CASE("cmd_run writes byte-identical artifacts for the same seed") {
  ScenarioConfig cfg = parse_scenario(kMinimal);
  const auto tmp = std::filesystem::temp_directory_path() / "mats_scenario_test";
  std::filesystem::remove_all(tmp);

  RunArtifacts a = cmd_run(cfg, 7, (tmp / "a").string());
  RunArtifacts b = cmd_run(cfg, 7, (tmp / "b").string());
  REQUIRE(a.files == b.files);
  for (const std::string& name : a.files) {
    CAPTURE(name);
    CHECK(slurp(tmp / "a" / name) == slurp(tmp / "b" / name));
  }
}

TEST_CASE("manifest lists every artifact with its correct hash") {
  ScenarioConfig cfg = parse_scenario(kMinimal);
  cfg.max_steps = 50;
  const auto tmp = std::filesystem::temp_directory_path() / "mats_manifest_test";
  std::filesystem::remove_all(tmp);

  RunFlags flags;
  flags.snapshot_every = 25;
  flags.plot = true;
  RunArtifacts art = cmd_run(cfg, 3, tmp.string(), flags);

  std::ifstream manifest(tmp / "manifest.txt");
  REQUIRE(manifest.good());
  std::string hash, name;
  size_t listed = 0;
  while (manifest >> hash >> name) {
    ++listed;
    char expected[32];
    std::snprintf(expected, sizeof(expected), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(slurp(tmp / name))));
    CHECK(hash == expected);
  }
  CHECK(listed == art.files.size() - 1);  // manifest itself is not self-listed
  CHECK(std::filesystem::exists(tmp / "trajectory.svg"));
  CHECK(std::filesystem::exists(tmp / "map_000000.pgm"));
  CHECK(std::filesystem::exists(tmp / "belief_000000.pgm"));
}

TEST_CASE("batch summary is invariant to seed order") {
  ScenarioConfig cfg = parse_scenario(kMinimal);
  cfg.max_steps = 400;
  BatchResult fwd = run_batch(cfg, {0, 1, 2}, {1});
  BatchResult rev = run_batch(cfg, {2, 1, 0}, {1});
  REQUIRE(fwd.rows.size() == 1);
  CHECK(fwd.rows[0].mean_search_time == rev.rows[0].mean_search_time);
  CHECK(fwd.rows[0].stddev_search_time == rev.rows[0].stddev_search_time);
  CHECK(fwd.rows[0].found == rev.rows[0].found);
}
