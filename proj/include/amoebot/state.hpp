#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "amoebot/tokens.hpp"

namespace amoebot {

enum class Role : std::uint8_t { undecided, candidate, noncandidate, withdrawn, sole_candidate, leader_signaled };

/// Segment heads keep their position even after withdrawing.
constexpr bool is_head_role(Role r) { return r != Role::undecided && r != Role::noncandidate; }
/// Heads still in the competition (a withdrawal deferred behind a running
/// solitude verification still counts as in the competition).
constexpr bool is_contender_role(Role r) {
  return r == Role::candidate || r == Role::sole_candidate || r == Role::leader_signaled;
}

using VectorFifo = BoundedFifo<VectorToken, 2>;

/// Slots of one solitude-verification instance: one walker and a FIFO per
/// (axis, sign).
struct SolitudeChannel {
  bool running = false;
  std::optional<SolitudeActivation> walker;
  std::array<std::array<VectorFifo, 2>, 2> vectors{};

  VectorFifo& fifo(Axis a, Sign s) { return vectors[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)]; }
  const VectorFifo& fifo(Axis a, Sign s) const {
    return vectors[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)];
  }
};

struct AgentElectionState {
  Role role = Role::undecided;
  int digit = -1;
  int reversed_digit = -1;
  bool digit_read = false;
  bool id_setup_complete = false;
  bool emitted = false;
  bool active = true;
  Comparison comparison = Comparison::none;
  bool longer_seen = false;
  bool withdraw_after_solitude = false;
  bool frozen = false;

  std::optional<IdSetupToken> id_setup;
  BoundedFifo<DigitToken, 2> comparison_fifo;
  SolitudeChannel solitude;
  std::optional<BoundaryIdToken> boundary_id;

  bool reversed_set() const { return reversed_digit >= 0; }
};

enum class BackupRole : std::uint8_t { candidate, withdrawn, sole, leader };
enum class BackupStage : std::uint8_t { flip, await_coins, solitude, boundary_id, stopping, finished };

/// State of the parallel almost-sure election. Every agent starts as a
/// candidate; coins travel on their own channels.
struct AlmostSureState {
  BackupRole role = BackupRole::candidate;
  BackupStage stage = BackupStage::flip;
  int epoch_mod4 = 0;
  bool flip_heads = false;

  BoundedFifo<CoinToken, 2> from_pred;  // received from the preceding candidate
  BoundedFifo<CoinToken, 2> from_succ;
  BoundedFifo<CoinToken, 2> to_pred;    // travelling towards the preceding candidate
  BoundedFifo<CoinToken, 2> to_succ;

  SolitudeChannel solitude;
  std::optional<BoundaryIdToken> boundary_id;
  std::optional<StopToken> stop;
};

constexpr bool is_contender(BackupRole r) { return r != BackupRole::withdrawn; }

/// Static per-agent fields also held in agent memory.
struct AgentStatic {
  int agent_id = 0;
  int pred_port = 0;
  int succ_port = 0;
  int empty_seq_len = 0;
};

class StateOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Fixed-layout bit encoding of everything an agent stores. Each field has a
/// width that depends only on the radix; a value that does not fit throws
/// StateOverflow. The returned size is therefore the agent's memory bound.
std::vector<std::uint8_t> serialize_agent_state(const AgentStatic& fixed, const AgentElectionState& el,
                                                const AlmostSureState* backup, int radix);

}  // namespace amoebot
