#pragma once

#include <vector>

#include "amoebot/election.hpp"
#include "amoebot/world.hpp"

namespace amoebot::variants {

// ---- Almost-sure parallel election ----------------------------------------

/// Elimination rule of one epoch: withdraw on own tails between two heads.
/// With a single contender both neighbours are the contender itself, so the
/// rule can never fire.
constexpr bool eliminated(bool own_heads, bool pred_heads, bool succ_heads) {
  return !own_heads && pred_heads && succ_heads;
}

bool backup_anchor(const AgentRuntime& rt);
const election::SolitudeHooks& backup_solitude();

/// One activation of the second election at `agent`: coin transport, the
/// epoch stage machine, its solitude channel, boundary identification and
/// the stop sweep.
void almost_sure_step(World& world, int agent);

// ---- Termination broadcast ------------------------------------------------

/// Called once a particle has become the leader: it halts and notifies its
/// neighbours.
void terminate_leader(World& world, int particle);

/// A particle holding a termination message forwards it and halts. Returns
/// true if the particle halted now.
bool forward_termination(World& world, int particle);

// ---- Expanded particles ---------------------------------------------------

/// Scheduling units: one per physical particle. An expanded particle owns
/// the two virtual particles of its nodes, activated back to back.
std::vector<std::vector<int>> scheduling_units(const World& world, bool expanded);

}  // namespace amoebot::variants
