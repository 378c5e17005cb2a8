#include <benchmark/benchmark.h>

#include <random>

#include "mats/selection.hpp"
#include "mats/sim.hpp"

namespace {

// Partially explored map with a few rectangular obstacles, the state a
// planning round typically sees mid-search.
mats::OccupancyGrid make_map(int side, unsigned seed) {
  mats::OccupancyGrid grid({side, side, 1.0}, 0.5);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(0, side - 1);
  for (int k = 0; k < side / 4; ++k) {
    const int x = coord(rng), y = coord(rng);
    for (int dy = 0; dy < 2; ++dy) {
      for (int dx = 0; dx < 3; ++dx) {
        if (x + dx < side && y + dy < side) grid.set({x + dx, y + dy}, 1.0);
      }
    }
  }
  // Explore a band around the agents' corner.
  for (int y = 0; y < side / 2; ++y) {
    for (int x = 0; x < side / 2; ++x) {
      if (grid.at(mats::Cell{x, y}) == 0.5) grid.set({x, y}, 0.0);
    }
  }
  return grid;
}

void BM_PlanRound(benchmark::State& state) {
  const int n_agents = static_cast<int>(state.range(0));
  const int side = static_cast<int>(state.range(1));
  mats::OccupancyGrid grid = make_map(side, 42);

  std::vector<mats::AgentSpec> agents;
  std::vector<mats::Pose> poses;
  for (int i = 0; i < n_agents; ++i) {
    agents.push_back({i, i, 1.0, 2, {}});
    poses.push_back({1.5 + i % 4, 1.5 + i / 4, 0.0});
  }

  for (auto _ : state) {
    auto round = mats::plan_round(agents, poses, grid, 300);
    benchmark::DoNotOptimize(round);
  }
}

void BM_WorldStep(benchmark::State& state) {
  mats::ScenarioConfig cfg;
  cfg.grid = {25, 25, 1.0};
  cfg.agents = {{{1.5, 1.5, 0.0}, 1.0, 2, 0, {}},
                {{3.5, 1.5, 0.0}, 1.0, 2, 1, {}},
                {{1.5, 3.5, 0.0}, 1.0, 2, 2, {}}};
  cfg.target = mats::TargetConfig{false, {20, 20}, {}};
  mats::World world(cfg, 7);
  for (auto _ : state) {
    world.step();
  }
}

}  // namespace

BENCHMARK(BM_PlanRound)->Args({2, 13})->Args({5, 25})->Args({10, 35});
BENCHMARK(BM_WorldStep);

BENCHMARK_MAIN();
