#include "amoebot/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "amoebot/election.hpp"
#include "amoebot/variants.hpp"

namespace amoebot {

bool RoundTracker::record(std::size_t unit) {
  if (!seen_[unit]) {
    seen_[unit] = true;
    ++count_;
  }
  if (count_ < seen_.size()) return false;
  std::fill(seen_.begin(), seen_.end(), false);
  count_ = 0;
  return true;
}

namespace {

bool segment_coin(World& world, int agent) {
  if (world.options().coin_override) return world.options().coin_override(agent);
  switch (world.params().coin) {
    case CoinMode::all_heads: return true;
    case CoinMode::all_tails: return false;
    default: return world.rng().coin();
  }
}

const char* kind_name(SetupResult::Kind k) {
  switch (k) {
    case SetupResult::Kind::lone_leader: return "lone_leader";
    case SetupResult::Kind::interior: return "interior";
    default: return "agents";
  }
}

std::vector<std::uint8_t> snapshot(const World& world) {
  std::vector<std::uint8_t> out;
  for (std::size_t a = 0; a < world.agent_count(); ++a) {
    const auto& rt = world.peek_agent(static_cast<int>(a));
    const auto bytes = serialize_agent_state(rt.fixed, rt.el, &rt.as, std::max(world.params().radix, 1));
    out.insert(out.end(), bytes.begin(), bytes.end());
    out.push_back(rt.initialized ? 1 : 0);
  }
  for (std::size_t p = 0; p < world.particle_count(); ++p) {
    const auto& pr = world.peek_particle(static_cast<int>(p));
    out.push_back(static_cast<std::uint8_t>(pr.activated | pr.halted << 1 | pr.termination_pending << 2 | pr.leader << 3));
  }
  return out;
}

bool backup_settled(const World& world) {
  for (std::size_t p = 0; p < world.particle_count(); ++p)
    if (!world.peek_particle(static_cast<int>(p)).activated) return false;
  for (std::size_t a = 0; a < world.agent_count(); ++a) {
    const auto& s = world.peek_agent(static_cast<int>(a)).as;
    if (s.role != BackupRole::withdrawn && s.stage != BackupStage::finished) return false;
  }
  return true;
}

FailureCause diagnose(const World& world) {
  std::vector<std::vector<int>> ids;
  for (std::size_t a = 0; a < world.agent_count(); ++a) {
    const auto& rt = world.peek_agent(static_cast<int>(a));
    if (rt.cycle < 0 || !world.cycle_is_outer(rt.cycle) || !is_head_role(rt.el.role)) continue;
    ids.push_back(election::segment_identifier(world, static_cast<int>(a)));
  }
  if (ids.empty()) return FailureCause::no_outer_candidate;
  for (const auto& id : ids)
    if (std::find(id.begin(), id.end(), -1) != id.end()) return FailureCause::unexplained;
  std::sort(ids.begin(), ids.end(), [](const auto& x, const auto& y) { return oracle::compare_identifiers(x, y) < 0; });
  const bool tie = ids.size() >= 2 && oracle::compare_identifiers(ids[ids.size() - 1], ids[ids.size() - 2]) == 0;
  return tie ? FailureCause::identifier_tie : FailureCause::unexplained;
}

}  // namespace

const char* failure_cause_name(FailureCause c) {
  switch (c) {
    case FailureCause::none: return "none";
    case FailureCause::no_outer_candidate: return "no_outer_candidate";
    case FailureCause::identifier_tie: return "identifier_tie";
    default: return "unexplained";
  }
}

void activate(World& world, int particle) {
  world.begin_activation(particle);
  auto& pr = world.particle(particle);
  const auto& params = world.params();
  if (pr.halted) {
    world.end_activation();
    return;
  }
  if (params.termination_broadcast && variants::forward_termination(world, particle)) {
    world.end_activation();
    return;
  }
  if (!pr.activated) {
    pr.activated = true;
    world.trace(particle, "BOUNDARY_SETUP",
                std::string("kind=") + kind_name(pr.kind) + " agents=" + std::to_string(pr.agents.size()));
    if (pr.kind == SetupResult::Kind::lone_leader) world.declare_leader(particle);
    for (int a : pr.agents) {
      world.agent(a).initialized = true;
      election::segment_setup(world, a, segment_coin(world, a));
    }
  }
  for (int a : pr.agents) {
    election::primary_step(world, a);
    if (params.almost_sure) variants::almost_sure_step(world, a);
  }
  if (params.termination_broadcast && pr.leader) variants::terminate_leader(world, particle);
  world.end_activation();
}

RunOutcome run(const Configuration& cfg, const RunOptions& options) {
  require_valid(cfg, options.params.expanded);

  WorldOptions wopts;
  wopts.params = options.params;
  wopts.coin_override = options.coin_override;
  wopts.check_invariants = options.check_invariants;
  wopts.trace = options.trace;
  World world(cfg, std::move(wopts));

  RunOutcome out;
  const auto& report = world.report();
  out.L = report.L;
  out.C = report.C;
  out.D = report.D;
  out.n = report.n;
  out.seed = options.params.seed;

  const auto units = variants::scheduling_units(world, options.params.expanded);
  const std::int64_t budget = options.max_rounds.value_or(200LL * std::max(report.L, 1));
  const bool broadcast = options.params.termination_broadcast;
  const bool settle = options.settle_almost_sure && options.params.almost_sure;

  std::optional<std::int64_t> election_round;
  std::int64_t halted_count = 0;
  std::int64_t post_rounds_left = options.post_termination_rounds;
  std::vector<std::uint8_t> quiet_reference;

  // Without a broadcast the run ends with the first leader (or once the
  // second election has settled, when asked to wait for it).
  auto stop_now = [&]() { return world.leader() && !broadcast && (!settle || backup_settled(world)); };
  auto activate_unit = [&](std::size_t u) {
    world.count_activation();
    for (int p : units[u]) {
      const bool was_halted = world.peek_particle(p).halted;
      activate(world, p);
      if (world.leader() && !election_round) election_round = world.round();
      if (!was_halted && world.peek_particle(p).halted) ++halted_count;
    }
    if (broadcast && !out.termination_round && halted_count == static_cast<std::int64_t>(world.particle_count())) {
      out.termination_round = world.round();
    }
  };

  RoundTracker tracker(units.size());
  std::vector<std::size_t> order(units.size());
  for (std::int64_t round = 1; round <= budget; ++round) {
    world.set_round(round);
    world.on_round_start();
    if (out.termination_round) {
      if (quiet_reference.empty()) quiet_reference = snapshot(world);
      if (post_rounds_left-- <= 0) break;
    }
    if (options.scheduler == SchedulerKind::permutation) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[world.rng().below(i)]);
      for (std::size_t u : order) {
        activate_unit(u);
        if (stop_now()) break;
      }
    } else {
      while (true) {
        const auto u = static_cast<std::size_t>(world.rng().below(units.size()));
        activate_unit(u);
        if (tracker.record(u) || stop_now()) break;
      }
    }
    if (stop_now()) break;
  }

  if (!quiet_reference.empty()) out.quiescent_after_termination = snapshot(world) == quiet_reference;

  if (!options.check_invariants) {
    for (std::size_t a = 0; a < world.agent_count(); ++a) {
      const auto& rt = world.peek_agent(static_cast<int>(a));
      if (!rt.initialized) continue;
      const auto bytes =
          serialize_agent_state(rt.fixed, rt.el, options.params.almost_sure ? &rt.as : nullptr, options.params.radix);
      world.instrumentation().max_state_bytes = std::max(world.instrumentation().max_state_bytes, bytes.size());
    }
  }

  out.rounds = election_round.value_or(budget);
  out.activations = world.activations();
  out.instrumentation = world.instrumentation();
  out.phase_rounds = out.instrumentation.phase_rounds;
  if (election_round) out.phase_rounds["leader"] = *election_round;
  if (out.termination_round) out.phase_rounds["termination"] = *out.termination_round;
  out.max_state_bytes = out.instrumentation.max_state_bytes;
  out.leaders_declared = out.instrumentation.leaders_declared;
  if (const auto leader = world.leader()) {
    out.leader = world.peek_particle(*leader).node;
    out.leader_on_outer = oracle::ground_truth(report, {}, out.leader).leader_on_outer;
  }
  out.success = out.leader.has_value() && out.leader_on_outer && out.leaders_declared == 1;
  if (!out.leader) out.failure = diagnose(world);
  return out;
}

std::string metrics_header() { return "n,L,C,D,rounds,activations,success,seed,max_state_bytes"; }

std::string metrics_row(const RunOutcome& o) {
  std::ostringstream row;
  row << o.n << ',' << o.L << ',' << o.C << ',' << o.D << ',' << o.rounds << ',' << o.activations << ','
      << (o.success ? 1 : 0) << ',' << o.seed << ',' << o.max_state_bytes;
  return row.str();
}

}  // namespace amoebot
