#include "amoebot/boundary.hpp"

#include <algorithm>
#include <string>

namespace amoebot {

SetupResult setup_boundaries(const NeighborhoodView& view) {
  const auto& occ = view.occupied;
  const auto count = std::count(occ.begin(), occ.end(), true);
  if (count == 0) return {SetupResult::Kind::lone_leader, {}};
  if (count == 6) return {SetupResult::Kind::interior, {}};

  SetupResult result;
  int next_id = 1;
  for (int start = 0; start < 6; ++start) {
    const bool here = occ[static_cast<std::size_t>(start)];
    const bool before = occ[static_cast<std::size_t>((start + 5) % 6)];
    if (here || !before) continue;
    int len = 0;
    while (!occ[static_cast<std::size_t>((start + len) % 6)]) ++len;
    result.agents.push_back(AgentSkeleton{
        .agent_id = next_id++,
        .pred_port = (start + 5) % 6,
        .succ_port = (start + len) % 6,
        .empty_seq_len = len,
        .first_empty_port = start,
    });
  }
  return result;
}

NeighborhoodView view_of(const std::set<NodeCoord>& occupied, NodeCoord node, int port_offset) {
  NeighborhoodView view;
  for (int p = 0; p < 6; ++p) {
    view.occupied[static_cast<std::size_t>(p)] = occupied.contains(step(node, Direction(p + port_offset)));
  }
  return view;
}

int AgentGraph::particle_at_port(int particle, int port) const {
  const NodeCoord n = step(particle_nodes[static_cast<std::size_t>(particle)], global_dir(particle, port));
  auto it = particle_index.find(n);
  return it == particle_index.end() ? -1 : it->second;
}

AgentGraph link_agents(const Configuration& cfg, std::uint64_t seed) {
  AgentGraph g;
  for (NodeCoord n : cfg.occupied) {
    g.particle_index.emplace(n, static_cast<int>(g.particle_nodes.size()));
    g.particle_nodes.push_back(n);
    g.port_offsets.push_back(port_offset(seed, n));
  }
  const int np = static_cast<int>(g.particle_nodes.size());
  g.setups.resize(static_cast<std::size_t>(np));
  g.particle_agents.resize(static_cast<std::size_t>(np));
  for (int p = 0; p < np; ++p) {
    const auto up = static_cast<std::size_t>(p);
    g.setups[up] = setup_boundaries(view_of(cfg.occupied, g.particle_nodes[up], g.port_offsets[up]));
    for (const auto& sk : g.setups[up].agents) {
      g.particle_agents[up].push_back(static_cast<int>(g.agents.size()));
      g.agents.push_back(LinkedAgent{.particle = p, .skeleton = sk});
    }
  }

  auto agent_with_pred_toward = [&](int q, int from_particle) {
    for (int b : g.particle_agents[static_cast<std::size_t>(q)]) {
      if (g.particle_at_port(q, g.agents[static_cast<std::size_t>(b)].skeleton.pred_port) == from_particle) return b;
    }
    return -1;
  };

  for (std::size_t a = 0; a < g.agents.size(); ++a) {
    auto& agent = g.agents[a];
    const int q = g.particle_at_port(agent.particle, agent.skeleton.succ_port);
    const int b = q < 0 ? -1 : agent_with_pred_toward(q, agent.particle);
    if (b < 0) throw InternalInconsistency("agent " + std::to_string(a) + " has no matching successor agent");
    auto& other = g.agents[static_cast<std::size_t>(b)];
    if (other.pred >= 0) throw InternalInconsistency("agent " + std::to_string(b) + " has two predecessors");
    agent.succ = b;
    other.pred = static_cast<int>(a);
  }

  for (std::size_t a = 0; a < g.agents.size(); ++a) {
    if (g.agents[a].cycle >= 0) continue;
    const int id = static_cast<int>(g.cycles.size());
    std::vector<int> cycle;
    int cur = static_cast<int>(a);
    do {
      if (g.agents[static_cast<std::size_t>(cur)].cycle >= 0) {
        throw InternalInconsistency("successor walk from agent " + std::to_string(a) + " does not close");
      }
      g.agents[static_cast<std::size_t>(cur)].cycle = id;
      cycle.push_back(cur);
      cur = g.agents[static_cast<std::size_t>(cur)].succ;
    } while (cur != static_cast<int>(a));
    g.cycles.push_back(std::move(cycle));
  }
  return g;
}

}  // namespace amoebot
