#include "mats/batch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mats {

namespace {

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

}  // namespace

BatchResult run_batch(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds,
                      const std::vector<int>& agent_counts) {
  BatchResult result;
  std::vector<double> latencies;

  for (int n : agent_counts) {
    BatchRow row;
    row.agent_count = n;
    std::vector<double> times;
    for (std::uint64_t seed : seeds) {
      ScenarioConfig c = cfg;
      override_agent_count(c, n, seed);
      Metrics m = run(c, seed);
      if (m.search_time) ++row.found;
      times.push_back(m.search_time ? static_cast<double>(*m.search_time)
                                    : static_cast<double>(cfg.max_steps));
      latencies.insert(latencies.end(), m.plan_latencies_ms.begin(),
                       m.plan_latencies_ms.end());
    }
    row.runs = static_cast<int>(times.size());
    // Sort so the summary is invariant to seed order.
    std::sort(times.begin(), times.end());
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= times.size();
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    row.mean_search_time = mean;
    row.stddev_search_time = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
    result.rows.push_back(row);
  }

  result.latency_p50_ms = percentile(latencies, 0.50);
  result.latency_p90_ms = percentile(latencies, 0.90);
  result.latency_p99_ms = percentile(latencies, 0.99);
  return result;
}

std::string format_batch_table(const BatchResult& result) {
  std::ostringstream out;
  out << "agents  runs  found  mean_search_time  stddev\n";
  char line[128];
  for (const BatchRow& r : result.rows) {
    std::snprintf(line, sizeof(line), "%-7d %-5d %-6d %-17.2f %-10.2f\n", r.agent_count,
                  r.runs, r.found, r.mean_search_time, r.stddev_search_time);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "plan latency ms: p50=%.3f p90=%.3f p99=%.3f\n", result.latency_p50_ms,
                result.latency_p90_ms, result.latency_p99_ms);
  out << line;
  return out.str();
}

}  // namespace mats
