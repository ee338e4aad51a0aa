#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "amoebot/config.hpp"
#include "amoebot/grid.hpp"

namespace amoebot {

/// What a particle sees through its own ports, in its local clockwise order.
struct NeighborhoodView {
  std::array<bool, 6> occupied{};
};

/// One agent as created by boundary setup, before it is linked to its
/// neighbours' agents. All ports are local to the hosting particle.
struct AgentSkeleton {
  int agent_id = 0;           // 1..3, distinct within the particle
  int pred_port = 0;          // v0
  int succ_port = 0;          // v(k+1)
  int empty_seq_len = 0;      // k in [1,5]
  int first_empty_port = 0;   // v1

  bool operator==(const AgentSkeleton&) const = default;
};

struct SetupResult {
  enum class Kind { lone_leader, interior, agents };
  Kind kind = Kind::agents;
  std::vector<AgentSkeleton> agents;
};

/// Boundary setup from purely local information: one agent per maximal run
/// of empty ports, predecessor before the run and successor after it.
SetupResult setup_boundaries(const NeighborhoodView& view);

NeighborhoodView view_of(const std::set<NodeCoord>& occupied, NodeCoord node, int port_offset);

struct LinkedAgent {
  int particle = 0;
  AgentSkeleton skeleton;
  int pred = -1;  // index into AgentGraph::agents
  int succ = -1;
  int cycle = -1;
};

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Simulator bookkeeping: every particle's setup result and the agents
/// resolved into boundary cycles.
struct AgentGraph {
  std::vector<NodeCoord> particle_nodes;
  std::vector<int> port_offsets;
  std::unordered_map<NodeCoord, int> particle_index;
  std::vector<SetupResult> setups;
  std::vector<std::vector<int>> particle_agents;
  std::vector<LinkedAgent> agents;
  std::vector<std::vector<int>> cycles;  // agent indices in successor order

  /// Global direction that local port `port` of `particle` faces.
  Direction global_dir(int particle, int port) const {
    return Direction(port + port_offsets[static_cast<std::size_t>(particle)]);
  }
  int particle_at_port(int particle, int port) const;
};

/// Resolves each agent's predecessor/successor ports to concrete agents: the
/// successor's agent is the one whose predecessor port faces back at us.
AgentGraph link_agents(const Configuration& cfg, std::uint64_t seed);

}  // namespace amoebot
