#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mats/sim.hpp"

namespace mats {

struct BatchRow {
  int agent_count = 0;
  int runs = 0;
  int found = 0;
  double mean_search_time = 0.0;  // steps; censored at max_steps when not found
  double stddev_search_time = 0.0;
};

struct BatchResult {
  std::vector<BatchRow> rows;
  double latency_p50_ms = 0.0;  // per-round planning latency over all runs
  double latency_p90_ms = 0.0;
  double latency_p99_ms = 0.0;
};

// Runs the seeds x agent-counts cross product of the scenario. Results are
// invariant to seed order.
BatchResult run_batch(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds,
                      const std::vector<int>& agent_counts);

std::string format_batch_table(const BatchResult& result);

}  // namespace mats
