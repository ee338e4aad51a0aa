#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amoebot/boundary.hpp"
#include "amoebot/config.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/state.hpp"

namespace amoebot {

class LocalityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct AgentRuntime {
  int particle = 0;
  int cycle = -1;
  int pred = -1;
  int succ = -1;
  AgentStatic fixed;
  bool initialized = false;
  AgentElectionState el;
  AlmostSureState as;

  int segment_head = -1;  // instrumentation: head agent of the frozen segment
};

struct ParticleRuntime {
  NodeCoord node;
  SetupResult::Kind kind = SetupResult::Kind::agents;
  std::vector<int> agents;  // agent_id order
  bool activated = false;
  bool halted = false;
  bool termination_pending = false;
  bool leader = false;
};

struct IdSetupRecord {
  int length = 0;
  std::int64_t hops = 0;
  std::int64_t rounds = 0;
};

struct SolitudeRecord {
  int extent = 0;
  std::int64_t rounds = 0;
  bool sole = false;
  bool truth_sole = false;
  bool backup = false;
};

struct BoundaryIdRecord {
  bool outer = false;
  int k_mod5 = 0;
  bool backup = false;
};

/// Online checks and measurements collected while a run executes.
struct Instrumentation {
  std::vector<IdSetupRecord> id_setups;
  std::vector<SolitudeRecord> solitudes;
  std::vector<BoundaryIdRecord> boundary_ids;

  std::int64_t progress_checks = 0;
  std::int64_t progress_violations = 0;
  std::int64_t order_checks = 0;
  std::int64_t order_violations = 0;
  std::int64_t separation_violations = 0;
  std::int64_t decisions = 0;
  std::int64_t decision_mismatches = 0;
  std::int64_t solitude_truth_violations = 0;

  int leaders_declared = 0;
  std::size_t max_state_bytes = 0;
  /// Round at which a phase milestone was reached ("id_setup" keeps the
  /// latest completion, the others the first occurrence).
  std::map<std::string, std::int64_t> phase_rounds;
};

struct WorldOptions {
  RunParameters params;
  /// Replaces the segment-setup coin for the given agent index when set.
  std::function<bool(int agent)> coin_override;
  bool check_invariants = true;
  std::ostream* trace = nullptr;
};

/// All state of one simulated system. Agent and particle memory is reached
/// through accessors that enforce locality while an activation is running.
class World {
 public:
  World(const Configuration& cfg, WorldOptions options);

  const Configuration& configuration() const { return cfg_; }
  const WorldOptions& options() const { return options_; }
  const RunParameters& params() const { return options_.params; }
  const AgentGraph& graph() const { return graph_; }
  const oracle::BoundaryReport& report() const { return report_; }
  Rng& rng() { return rng_; }

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t particle_count() const { return particles_.size(); }

  /// Locality-checked access; valid outside activations as well.
  AgentRuntime& agent(int index);
  ParticleRuntime& particle(int index);
  /// Unchecked views for the scheduler, tests and instrumentation.
  const AgentRuntime& peek_agent(int index) const { return agents_[static_cast<std::size_t>(index)]; }
  const ParticleRuntime& peek_particle(int index) const { return particles_[static_cast<std::size_t>(index)]; }
  AgentRuntime& raw_agent(int index) { return agents_[static_cast<std::size_t>(index)]; }

  void begin_activation(int particle);
  void end_activation();
  int active_particle() const { return active_particle_; }
  /// Throws LocalityViolation if `particle` is neither the active particle
  /// nor adjacent to it.
  void touch(int particle) const;

  std::int64_t round() const { return round_; }
  std::int64_t activations() const { return activations_; }
  void set_round(std::int64_t r) { round_ = r; }
  void count_activation() { ++activations_; }
  std::uint32_t next_token_uid() { return ++token_uid_; }

  void trace(int particle, std::string_view event, const std::string& payload);

  Instrumentation& instrumentation() { return instr_; }
  const Instrumentation& instrumentation() const { return instr_; }

  /// Oracle boundary index of a cycle of the agent graph.
  std::size_t boundary_of_cycle(int cycle) const { return cycle_boundary_[static_cast<std::size_t>(cycle)]; }
  bool cycle_is_outer(int cycle) const;
  oracle::GlobalAgent global_agent(int agent) const;

  std::optional<int> leader() const { return leader_; }
  /// Latches the leader bit of `particle`; at most one per run is expected.
  void declare_leader(int particle);

  /// Round-start hook: progress/order checks and state-size accounting.
  void on_round_start();

 private:
  void check_cycle_tokens(int cycle);

  Configuration cfg_;
  WorldOptions options_;
  AgentGraph graph_;
  oracle::BoundaryReport report_;
  Rng rng_;
  std::vector<AgentRuntime> agents_;
  std::vector<ParticleRuntime> particles_;
  std::vector<std::size_t> cycle_boundary_;

  int active_particle_ = -1;
  std::int64_t round_ = 0;
  std::int64_t activations_ = 0;
  std::optional<int> leader_;
  std::uint32_t token_uid_ = 0;
  Instrumentation instr_;

  struct CycleWatch {
    std::optional<std::int64_t> all_emitted_round;
    std::vector<std::uint32_t> order;
  };
  std::vector<CycleWatch> watch_;
};

}  // namespace amoebot
