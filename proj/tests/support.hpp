#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "amoebot/boundary.hpp"
#include "amoebot/config.hpp"
#include "amoebot/oracle.hpp"

namespace amoebot::testing {

inline Configuration config_of(std::initializer_list<NodeCoord> nodes) {
  Configuration cfg;
  cfg.occupied.insert(nodes.begin(), nodes.end());
  return cfg;
}

/// Cycles built by the distributed setup, written in the oracle's vocabulary.
inline std::vector<std::vector<oracle::GlobalAgent>> distributed_cycles(const AgentGraph& g) {
  std::vector<std::vector<oracle::GlobalAgent>> out;
  for (const auto& cycle : g.cycles) {
    auto& seq = out.emplace_back();
    for (int a : cycle) {
      const auto& la = g.agents[static_cast<std::size_t>(a)];
      seq.push_back({g.particle_nodes[static_cast<std::size_t>(la.particle)],
                     g.global_dir(la.particle, la.skeleton.first_empty_port).index(), la.skeleton.empty_seq_len});
    }
  }
  return out;
}

/// Every distributed cycle matches exactly one oracle boundary, and the
/// counts agree.
inline bool cycles_match_oracle(const Configuration& cfg, std::uint64_t seed) {
  const auto graph = link_agents(cfg, seed);
  const auto report = oracle::classify_boundaries(cfg);
  const auto cycles = distributed_cycles(graph);
  if (cycles.size() != report.boundaries.size()) return false;
  std::vector<bool> used(report.boundaries.size(), false);
  for (const auto& c : cycles) {
    bool found = false;
    for (std::size_t b = 0; b < report.boundaries.size() && !found; ++b) {
      if (used[b]) continue;
      if (oracle::cyclic_equal(c, report.boundaries[b].agent_cycle)) used[b] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Fixed shapes used by several suites.
inline std::vector<Configuration> fixed_shapes() {
  std::vector<Configuration> out;
  for (int n : {1, 2, 3, 5, 8}) out.push_back(generate(LineShape{n}, 0));
  for (auto [w, h] : {std::pair{2, 2}, std::pair{3, 5}, std::pair{6, 6}, std::pair{10, 10}}) {
    out.push_back(generate(ParallelogramShape{w, h}, 0));
  }
  for (auto [o, i] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{4, 2}}) out.push_back(generate(AnnulusShape{o, i}, 0));
  return out;
}

}  // namespace amoebot::testing
