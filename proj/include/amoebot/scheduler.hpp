#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "amoebot/config.hpp"
#include "amoebot/world.hpp"

namespace amoebot {

enum class SchedulerKind { permutation, uniform };

/// Round accounting for the uniform policy: a round closes at the first
/// activation after which every unit has been activated since it opened.
class RoundTracker {
 public:
  explicit RoundTracker(std::size_t units) : seen_(units, false) {}

  /// Returns true if this activation closes the current round.
  bool record(std::size_t unit);

 private:
  std::vector<bool> seen_;
  std::size_t count_ = 0;
};

struct RunOptions {
  RunParameters params;
  SchedulerKind scheduler = SchedulerKind::permutation;
  std::optional<std::int64_t> max_rounds;  // default 200 * max(L, 1)
  bool check_invariants = true;
  /// Keep running after the first leader until the second election has
  /// settled everywhere, to observe that no second leader appears.
  bool settle_almost_sure = false;
  /// Rounds simulated after everyone terminated, to confirm quiescence.
  int post_termination_rounds = 0;
  std::function<bool(int agent)> coin_override;
  std::ostream* trace = nullptr;
};

/// Why a run ended without a leader, judged with global knowledge.
enum class FailureCause {
  none,
  no_outer_candidate,  // every outer agent flipped tails
  identifier_tie,      // the largest outer identifier is held by two or more heads
  unexplained,
};

const char* failure_cause_name(FailureCause c);

struct RunOutcome {
  std::optional<NodeCoord> leader;
  std::int64_t rounds = 0;       // round in which the leader was declared, else the budget
  std::int64_t activations = 0;  // activations up to the end of the run
  std::map<std::string, std::int64_t> phase_rounds;
  int L = 0;
  int C = 0;
  int D = 0;
  int n = 0;
  std::size_t max_state_bytes = 0;
  std::uint64_t seed = 0;
  bool success = false;
  bool leader_on_outer = false;
  int leaders_declared = 0;
  std::optional<std::int64_t> termination_round;
  bool quiescent_after_termination = true;
  FailureCause failure = FailureCause::none;
  Instrumentation instrumentation;
};

/// Activates one particle: boundary and segment setup on its first
/// activation, then every agent's rules in agent-id order.
void activate(World& world, int particle);

/// Runs one election to completion or until the round budget is spent.
/// Throws ConfigError if the configuration is not valid for the run.
RunOutcome run(const Configuration& cfg, const RunOptions& options);

std::string metrics_header();
std::string metrics_row(const RunOutcome& outcome);

}  // namespace amoebot
