#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mats/sim.hpp"

namespace mats {

struct RunFlags {
  std::optional<int> snapshot_every;  // emit map/belief graymaps every k steps
  bool plot = false;                  // emit trajectory.svg
};

struct RunArtifacts {
  Metrics metrics;
  std::vector<std::string> files;  // relative to out_dir, manifest order
  std::string out_dir;
};

// FNV-1a 64-bit, used for the artifact manifest.
std::uint64_t fnv1a64(const std::string& bytes);

// Executes the scenario and writes metrics.txt, trajectory.csv, optional
// snapshots and plot, plus manifest.txt listing every file with its hash.
RunArtifacts cmd_run(const ScenarioConfig& cfg, std::uint64_t seed,
                     const std::string& out_dir, const RunFlags& flags = {});

}  // namespace mats
