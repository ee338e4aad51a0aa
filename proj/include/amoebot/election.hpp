#pragma once

#include <optional>
#include <vector>

#include "amoebot/grid.hpp"
#include "amoebot/state.hpp"
#include "amoebot/world.hpp"

namespace amoebot::election {

// ---- Pure per-agent rules -------------------------------------------------

Role segment_role(bool heads);

Comparison compare_digits(int agent_digit, int token_digit);

/// Fresh, inactive token for an agent's reversed digit.
DigitToken make_digit_token(int reversed_digit, bool last_in_segment);

/// Matches an active token against an active agent. Returns true on match.
/// A head that matches a non-delimiter token learns that the arriving
/// sequence is longer than its own identifier.
bool comparison_match(AgentElectionState& agent, DigitToken& token, bool agent_is_head);

/// Passing delimiter: keeps the most significant difference seen so far,
/// then the agent forgets its result and becomes active again.
void delimiter_traverse(AgentElectionState& agent, DigitToken& delimiter);

enum class DelimiterOutcome { withdraw, stay, trigger_solitude };

/// `matched_here` is whether the delimiter was still active when it reached
/// the candidate (equal lengths).
DelimiterOutcome delimiter_decide(bool longer_seen, bool matched_here, Comparison highest_diff);

/// Components of a hop in the owner's frame, each in {-1, 0, 1}.
NodeCoord hop_components(int heading);

AxisResult evaluate_axis(int positive, int negative);

bool solitude_sole(const SolitudeActivation& walker, int owner_agent_id);

int boundary_id_accumulate(int k_mod5, int empty_seq_len);

enum class BoundaryVerdict { outer, inner, inconsistent };
BoundaryVerdict boundary_id_decide(int k_mod5);

// ---- Rules that act on an agent and its neighbours ------------------------

/// Which solitude channel to drive and which agents end an extended segment.
struct SolitudeHooks {
  SolitudeChannel& (*channel)(AgentRuntime&);
  bool (*anchor)(const AgentRuntime&);
  bool backup = false;
};

const SolitudeHooks& primary_solitude();

/// Starts a verification at `owner`; false if one is already running.
bool solitude_start(World& world, int owner, const SolitudeHooks& hooks);

/// Moves this agent's vector tokens and, if the walker sits here, the walker.
/// Returns the verdict when the walker concludes at its owner.
std::optional<bool> solitude_step(World& world, int agent, const SolitudeHooks& hooks);

/// Segment setup: role from the coin, and the id-setup token at candidates.
void segment_setup(World& world, int agent, bool heads);

/// One activation of the primary algorithm at `agent`.
void primary_step(World& world, int agent);

bool primary_anchor(const AgentRuntime& rt);

/// Global view for instrumentation: digits of the frozen segment headed by
/// `head`, in identifier order.
std::vector<int> segment_identifier(const World& world, int head);

}  // namespace amoebot::election
