#include "mats/artifacts.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mats {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& bytes,
                RunArtifacts& art) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  art.files.push_back(name);
}

std::string render_svg(const Metrics& m, const GridDims& dims) {
  static const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                   "#911eb4", "#46f0f0", "#f032e6", "#bcf60c",
                                   "#008080", "#9a6324"};
  const double scale = 20.0;
  const double w = dims.width * dims.resolution * scale;
  const double h = dims.height * dims.resolution * scale;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(w) << " "
      << fmt(h) << "\">\n";
  svg << "<rect width=\"" << fmt(w) << "\" height=\"" << fmt(h)
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (size_t i = 0; i < m.trajectories.size(); ++i) {
    svg << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 10]
        << "\" stroke-width=\"2\" points=\"";
    for (const Pose& p : m.trajectories[i]) {
      svg << fmt(p.x * scale) << "," << fmt(h - p.y * scale) << " ";
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

RunArtifacts cmd_run(const ScenarioConfig& cfg, std::uint64_t seed,
                     const std::string& out_dir, const RunFlags& flags) {
  fs::create_directories(out_dir);
  RunArtifacts art;
  art.out_dir = out_dir;
  const fs::path dir(out_dir);

  World world(cfg, seed);

  auto snapshot = [&](int step) {
    char name[64];
    std::snprintf(name, sizeof(name), "map_%06d.pgm", step);
    std::ostringstream map;
    write_pgm(world.grid(), map);
    write_file(dir, name, map.str(), art);

    // Belief snapshot shares the graymap format, rescaled by the max mass.
    double max_mass = 0.0;
    for (double v : world.belief().mass()) max_mass = std::max(max_mass, v);
    std::vector<double> scaled(world.belief().mass().begin(),
                               world.belief().mass().end());
    if (max_mass > 0.0) {
      for (double& v : scaled) v /= max_mass;
    }
    std::snprintf(name, sizeof(name), "belief_%06d.pgm", step);
    std::ostringstream bel;
    write_pgm(scaled, cfg.grid, bel);
    write_file(dir, name, bel.str(), art);
  };

  while (!world.done()) {
    if (flags.snapshot_every && world.clock() % *flags.snapshot_every == 0) {
      snapshot(world.clock());
    }
    world.step();
  }
  if (flags.snapshot_every) snapshot(world.clock());

  Metrics m = world.metrics();
  const double h0 = world.initial_entropy();
  const double h1 = m.entropy_trace.empty() ? h0 : m.entropy_trace.back();
  m.entropy_reduction_rate = (h0 - h1) / std::max(1, world.clock());

  std::ostringstream metrics;
  metrics << "# step total_entropy [x y heading]*agents\n";
  for (size_t k = 0; k < m.entropy_trace.size(); ++k) {
    metrics << k << " " << fmt(m.entropy_trace[k]);
    for (const auto& traj : m.trajectories) {
      metrics << " " << fmt(traj[k].x) << " " << fmt(traj[k].y) << " "
              << fmt(traj[k].heading);
    }
    metrics << "\n";
  }
  metrics << "# search_time " << (m.search_time ? std::to_string(*m.search_time) : "none")
          << "\n";
  metrics << "# entropy_reduction_rate " << fmt(m.entropy_reduction_rate) << "\n";
  write_file(dir, "metrics.txt", metrics.str(), art);

  std::ostringstream traj;
  traj << "step,agent,x,y,heading\n";
  for (size_t k = 0; k < m.entropy_trace.size(); ++k) {
    for (size_t a = 0; a < m.trajectories.size(); ++a) {
      const Pose& p = m.trajectories[a][k];
      traj << k << "," << a << "," << fmt(p.x) << "," << fmt(p.y) << ","
           << fmt(p.heading) << "\n";
    }
  }
  write_file(dir, "trajectory.csv", traj.str(), art);

  if (flags.plot) {
    write_file(dir, "trajectory.svg", render_svg(m, cfg.grid), art);
  }

  std::ostringstream manifest;
  for (const std::string& name : art.files) {
    std::ifstream in(dir / name, std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.str())));
    manifest << hex << "  " << name << "\n";
  }
  {
    std::ofstream out(dir / "manifest.txt", std::ios::binary);
    out << manifest.str();
  }
  art.files.push_back("manifest.txt");
  art.metrics = std::move(m);
  return art;
}

}  // namespace mats
