#include "amoebot/variants.hpp"

#include <string>

namespace amoebot::variants {

namespace {

SolitudeChannel& backup_channel(AgentRuntime& rt) { return rt.as.solitude; }
bool backup_anchor_fn(const AgentRuntime& rt) { return backup_anchor(rt); }

bool reachable(World& world, const AgentRuntime& rt) {
  return rt.initialized && !world.particle(rt.particle).halted;
}

std::string tag(const AgentRuntime& rt) { return "agent=" + std::to_string(rt.fixed.agent_id) + " backup=1"; }

void backup_withdraw(World& world, int agent, const char* why) {
  auto& rt = world.agent(agent);
  auto& s = rt.as;
  s.role = BackupRole::withdrawn;
  s.stage = BackupStage::finished;
  // Buffered coins now travel on to the next contender.
  while (!s.from_pred.empty()) s.to_succ.push_back(s.from_pred.pop_front());
  while (!s.from_succ.empty()) s.to_pred.push_back(s.from_succ.pop_front());
  world.trace(rt.particle, "WITHDRAW", tag(rt) + " why=" + why);
}

void move_coin(World& world, AgentRuntime& me, bool towards_pred) {
  auto& out = towards_pred ? me.as.to_pred : me.as.to_succ;
  if (out.empty()) return;
  auto& target = world.agent(towards_pred ? me.pred : me.succ);
  if (!reachable(world, target)) return;
  auto& in = is_contender(target.as.role) ? (towards_pred ? target.as.from_succ : target.as.from_pred)
                                          : (towards_pred ? target.as.to_pred : target.as.to_succ);
  if (in.full()) return;
  in.push_back(out.pop_front());
}

void boundary_id_step(World& world, int a) {
  auto& me = world.agent(a);
  if (!me.as.boundary_id) return;
  auto& tok = *me.as.boundary_id;
  if (tok.departed && me.as.role == BackupRole::sole && me.as.stage == BackupStage::boundary_id) {
    const auto verdict = election::boundary_id_decide(tok.k_mod5);
    world.instrumentation().boundary_ids.push_back({world.cycle_is_outer(me.cycle), tok.k_mod5, true});
    world.trace(me.particle, "BOUNDARY_ID_RESULT", tag(me) + " k=" + std::to_string(tok.k_mod5));
    me.as.boundary_id.reset();
    if (verdict == election::BoundaryVerdict::outer) {
      me.as.stage = BackupStage::stopping;
      me.as.stop = StopToken{};
    } else {
      backup_withdraw(world, a, verdict == election::BoundaryVerdict::inner ? "inner" : "inconsistent");
    }
    return;
  }
  auto& succ = world.agent(me.succ);
  if (!reachable(world, succ) || succ.as.boundary_id) return;
  BoundaryIdToken moved = tok;
  moved.departed = true;
  moved.k_mod5 = election::boundary_id_accumulate(moved.k_mod5, succ.fixed.empty_seq_len);
  succ.as.boundary_id = moved;
  me.as.boundary_id.reset();
}

/// The stop sweep freezes the first algorithm at every agent it visits and
/// looks for a leader bit it may already have set.
void visit(World& world, AgentRuntime& rt, StopToken& tok) {
  rt.el.frozen = true;
  tok.leader_seen = tok.leader_seen || world.particle(rt.particle).leader;
}

void stop_step(World& world, int a) {
  auto& me = world.agent(a);
  if (!me.as.stop) return;
  auto& tok = *me.as.stop;
  const bool owner = me.as.role == BackupRole::sole && me.as.stage == BackupStage::stopping;
  if (owner && !tok.departed) visit(world, me, tok);
  if (owner && tok.departed) {
    const bool seen = tok.leader_seen;
    me.as.stop.reset();
    if (seen) {
      backup_withdraw(world, a, "leader_seen");
    } else {
      me.as.role = BackupRole::leader;
      me.as.stage = BackupStage::finished;
      world.declare_leader(me.particle);
    }
    return;
  }
  auto& succ = world.agent(me.succ);
  if (!reachable(world, succ) || succ.as.stop) return;
  StopToken moved = tok;
  moved.departed = true;
  visit(world, succ, moved);
  succ.as.stop = moved;
  me.as.stop.reset();
}

}  // namespace

bool backup_anchor(const AgentRuntime& rt) { return rt.initialized && is_contender(rt.as.role); }

const election::SolitudeHooks& backup_solitude() {
  static const election::SolitudeHooks hooks{&backup_channel, &backup_anchor_fn, true};
  return hooks;
}

void almost_sure_step(World& world, int agent) {
  {
    auto& me = world.agent(agent);
    if (!reachable(world, me)) return;
    move_coin(world, me, true);
    move_coin(world, me, false);
  }

  auto& me = world.agent(agent);
  auto& s = me.as;
  if (s.role == BackupRole::candidate) {
    switch (s.stage) {
      case BackupStage::flip:
        if (s.to_pred.full() || s.to_succ.full()) break;
        s.flip_heads = world.rng().coin();
        s.to_pred.push_back({s.flip_heads, s.epoch_mod4});
        s.to_succ.push_back({s.flip_heads, s.epoch_mod4});
        s.stage = BackupStage::await_coins;
        world.trace(me.particle, "COIN", tag(me) + " heads=" + (s.flip_heads ? "1" : "0") +
                                             " epoch=" + std::to_string(s.epoch_mod4));
        break;
      case BackupStage::await_coins: {
        if (s.from_pred.empty() || s.from_succ.empty()) break;
        if (s.from_pred.front().epoch_mod4 != s.epoch_mod4 || s.from_succ.front().epoch_mod4 != s.epoch_mod4) break;
        const bool pred_heads = s.from_pred.pop_front().heads;
        const bool succ_heads = s.from_succ.pop_front().heads;
        if (eliminated(s.flip_heads, pred_heads, succ_heads)) {
          backup_withdraw(world, agent, "coins");
        } else {
          election::solitude_start(world, agent, backup_solitude());
          s.stage = BackupStage::solitude;
        }
        break;
      }
      default:
        break;
    }
  }

  if (const auto verdict = election::solitude_step(world, agent, backup_solitude())) {
    auto& owner = world.agent(agent);
    if (*verdict) {
      owner.as.role = BackupRole::sole;
      owner.as.stage = BackupStage::boundary_id;
      owner.as.boundary_id = BoundaryIdToken{};
    } else {
      owner.as.epoch_mod4 = (owner.as.epoch_mod4 + 1) % 4;
      owner.as.stage = BackupStage::flip;
    }
  }
  boundary_id_step(world, agent);
  stop_step(world, agent);
}

void terminate_leader(World& world, int particle) {
  auto& p = world.particle(particle);
  if (p.halted) return;
  p.termination_pending = true;
  forward_termination(world, particle);
}

bool forward_termination(World& world, int particle) {
  auto& p = world.particle(particle);
  if (!p.termination_pending || p.halted) return false;
  const auto& g = world.graph();
  for (int port = 0; port < 6; ++port) {
    const int q = g.particle_at_port(particle, port);
    if (q < 0) continue;
    auto& other = world.particle(q);
    if (!other.halted) other.termination_pending = true;
  }
  p.halted = true;
  return true;
}

std::vector<std::vector<int>> scheduling_units(const World& world, bool expanded) {
  const auto& g = world.graph();
  std::vector<int> unit_of(g.particle_nodes.size(), -1);
  std::vector<std::vector<int>> units;
  if (expanded) {
    for (const auto& pair : world.configuration().expanded_pairs) {
      const int a = g.particle_index.at(pair.first);
      const int b = g.particle_index.at(pair.second);
      unit_of[static_cast<std::size_t>(a)] = unit_of[static_cast<std::size_t>(b)] = static_cast<int>(units.size());
      units.push_back({a, b});
    }
  }
  for (std::size_t p = 0; p < unit_of.size(); ++p) {
    if (unit_of[p] < 0) units.push_back({static_cast<int>(p)});
  }
  return units;
}

}  // namespace amoebot::variants
