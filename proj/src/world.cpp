#include "amoebot/world.hpp"

#include <algorithm>

namespace amoebot {

World::World(const Configuration& cfg, WorldOptions options)
    : cfg_(cfg),
      options_(std::move(options)),
      graph_(link_agents(cfg, options_.params.seed)),
      report_(oracle::classify_boundaries(cfg)),
      rng_(options_.params.seed) {
  particles_.resize(graph_.particle_nodes.size());
  for (std::size_t p = 0; p < particles_.size(); ++p) {
    particles_[p].node = graph_.particle_nodes[p];
    particles_[p].kind = graph_.setups[p].kind;
    particles_[p].agents = graph_.particle_agents[p];
  }
  agents_.resize(graph_.agents.size());
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    const auto& la = graph_.agents[a];
    auto& rt = agents_[a];
    rt.particle = la.particle;
    rt.cycle = la.cycle;
    rt.pred = la.pred;
    rt.succ = la.succ;
    rt.fixed = AgentStatic{la.skeleton.agent_id, la.skeleton.pred_port, la.skeleton.succ_port, la.skeleton.empty_seq_len};
  }
  for (const auto& cycle : graph_.cycles) {
    const auto idx = report_.boundary_of(global_agent(cycle.front()));
    if (!idx) throw InternalInconsistency("agent cycle unknown to the oracle");
    cycle_boundary_.push_back(*idx);
  }
  watch_.resize(graph_.cycles.size());
}

AgentRuntime& World::agent(int index) {
  auto& rt = agents_.at(static_cast<std::size_t>(index));
  touch(rt.particle);
  return rt;
}

ParticleRuntime& World::particle(int index) {
  touch(index);
  return particles_.at(static_cast<std::size_t>(index));
}

void World::begin_activation(int particle) { active_particle_ = particle; }
void World::end_activation() { active_particle_ = -1; }

void World::touch(int particle) const {
  if (active_particle_ < 0 || particle == active_particle_) return;
  const NodeCoord a = particles_[static_cast<std::size_t>(active_particle_)].node;
  const NodeCoord b = particles_.at(static_cast<std::size_t>(particle)).node;
  if (!adjacent(a, b)) {
    throw LocalityViolation("activation of particle at (" + std::to_string(a.x) + "," + std::to_string(a.y) +
                            ") touched non-neighbour (" + std::to_string(b.x) + "," + std::to_string(b.y) + ")");
  }
}

void World::trace(int particle, std::string_view event, const std::string& payload) {
  if (options_.trace == nullptr) return;
  const NodeCoord n = particles_[static_cast<std::size_t>(particle)].node;
  *options_.trace << round_ << ' ' << activations_ << ' ' << n.x << ' ' << n.y << ' ' << event;
  if (!payload.empty()) *options_.trace << ' ' << payload;
  *options_.trace << '\n';
}

bool World::cycle_is_outer(int cycle) const {
  return report_.boundaries[boundary_of_cycle(cycle)].kind == oracle::BoundaryKind::outer;
}

oracle::GlobalAgent World::global_agent(int agent) const {
  const auto& la = graph_.agents[static_cast<std::size_t>(agent)];
  return {graph_.particle_nodes[static_cast<std::size_t>(la.particle)],
          graph_.global_dir(la.particle, la.skeleton.first_empty_port).index(), la.skeleton.empty_seq_len};
}

void World::declare_leader(int particle) {
  auto& p = particles_[static_cast<std::size_t>(particle)];
  if (p.leader) return;
  p.leader = true;
  ++instr_.leaders_declared;
  if (!leader_) leader_ = particle;
  trace(particle, "LEADER", "");
}

void World::on_round_start() {
  if (!options_.check_invariants) return;
  for (const auto& rt : agents_) {
    if (!rt.initialized) continue;
    const auto bytes = serialize_agent_state(rt.fixed, rt.el, options_.params.almost_sure ? &rt.as : nullptr,
                                             options_.params.radix);
    instr_.max_state_bytes = std::max(instr_.max_state_bytes, bytes.size());
  }
  for (std::size_t c = 0; c < graph_.cycles.size(); ++c) check_cycle_tokens(static_cast<int>(c));
}

void World::check_cycle_tokens(int cycle) {
  const auto& members = graph_.cycles[static_cast<std::size_t>(cycle)];
  auto& w = watch_[static_cast<std::size_t>(cycle)];
  for (int a : members) {
    const auto& rt = agents_[static_cast<std::size_t>(a)];
    if (!rt.initialized || rt.el.frozen || particles_[static_cast<std::size_t>(rt.particle)].halted) return;
  }

  if (!w.all_emitted_round) {
    for (int a : members)
      if (!agents_[static_cast<std::size_t>(a)].el.emitted) return;
    w.all_emitted_round = round_;
    // Segments are fixed by now; remember each agent's head.
    for (int a : members) {
      int h = a;
      while (!is_head_role(agents_[static_cast<std::size_t>(h)].el.role)) h = agents_[static_cast<std::size_t>(h)].pred;
      agents_[static_cast<std::size_t>(a)].segment_head = h;
    }
  }

  const std::int64_t elapsed = round_ - *w.all_emitted_round;
  std::vector<std::uint32_t> order;
  std::vector<int> segment_of;
  for (int a : members) {
    for (const auto& t : agents_[static_cast<std::size_t>(a)].el.comparison_fifo) {
      ++instr_.progress_checks;
      if (t.steps < elapsed) ++instr_.progress_violations;
      order.push_back(t.uid);
      segment_of.push_back(agents_[static_cast<std::size_t>(t.origin)].segment_head);
    }
  }

  if (w.order.empty()) {
    w.order = order;
  } else {
    ++instr_.order_checks;
    bool same = false;
    if (order.size() == w.order.size()) {
      const auto it = std::find(order.begin(), order.end(), w.order.front());
      if (it != order.end()) {
        const auto shift = static_cast<std::size_t>(it - order.begin());
        same = true;
        for (std::size_t i = 0; i < order.size() && same; ++i) same = order[(i + shift) % order.size()] == w.order[i];
      }
    }
    if (!same) ++instr_.order_violations;
  }

  std::size_t heads = 0;
  for (int a : members)
    if (is_head_role(agents_[static_cast<std::size_t>(a)].el.role)) ++heads;
  std::size_t changes = 0;
  for (std::size_t i = 0; i < segment_of.size(); ++i)
    if (segment_of[i] != segment_of[(i + 1) % segment_of.size()]) ++changes;
  if (changes != (heads > 1 ? heads : 0)) ++instr_.separation_violations;
}

}  // namespace amoebot
