#include "amoebot/election.hpp"

#include <string>
#include <vector>

namespace amoebot::election {

Role segment_role(bool heads) { return heads ? Role::candidate : Role::noncandidate; }

Comparison compare_digits(int agent_digit, int token_digit) {
  if (agent_digit == token_digit) return Comparison::equal;
  return agent_digit > token_digit ? Comparison::agent_greater : Comparison::agent_smaller;
}

DigitToken make_digit_token(int reversed_digit, bool last_in_segment) {
  DigitToken t;
  t.digit = reversed_digit;
  t.delimiter = last_in_segment;
  t.active = false;
  return t;
}

bool comparison_match(AgentElectionState& agent, DigitToken& token, bool agent_is_head) {
  if (!agent.active || !token.active) return false;
  agent.active = false;
  token.active = false;
  agent.comparison = compare_digits(agent.digit, token.digit);
  if (agent_is_head && !token.delimiter) agent.longer_seen = true;
  return true;
}

void delimiter_traverse(AgentElectionState& agent, DigitToken& delimiter) {
  if (agent.comparison != Comparison::none && agent.comparison != Comparison::equal) {
    delimiter.highest_diff = agent.comparison;
  }
  agent.comparison = Comparison::none;
  agent.active = true;
}

DelimiterOutcome delimiter_decide(bool longer_seen, bool matched_here, Comparison highest_diff) {
  if (longer_seen) return DelimiterOutcome::withdraw;
  if (!matched_here) return DelimiterOutcome::stay;
  switch (highest_diff) {
    case Comparison::agent_smaller: return DelimiterOutcome::withdraw;
    case Comparison::agent_greater: return DelimiterOutcome::stay;
    default: return DelimiterOutcome::trigger_solitude;
  }
}

NodeCoord hop_components(int heading) { return vector_of(Direction(heading)); }

AxisResult evaluate_axis(int positive, int negative) {
  return positive == negative ? AxisResult::zero : AxisResult::nonzero;
}

bool solitude_sole(const SolitudeActivation& walker, int owner_agent_id) {
  return walker.x == AxisResult::zero && walker.y == AxisResult::zero && walker.end_agent_id == owner_agent_id;
}

int boundary_id_accumulate(int k_mod5, int empty_seq_len) {
  return (((k_mod5 + turn_value(empty_seq_len)) % 5) + 5) % 5;
}

BoundaryVerdict boundary_id_decide(int k_mod5) {
  if (k_mod5 == 1) return BoundaryVerdict::outer;
  if (k_mod5 == 4) return BoundaryVerdict::inner;
  return BoundaryVerdict::inconsistent;
}

namespace {

const char* name(DelimiterOutcome o) {
  switch (o) {
    case DelimiterOutcome::withdraw: return "withdraw";
    case DelimiterOutcome::stay: return "stay";
    default: return "solitude";
  }
}

bool particle_halted(World& world, const AgentRuntime& rt) { return world.particle(rt.particle).halted; }

/// Agent may take part in the primary algorithm this activation.
bool primary_live(World& world, const AgentRuntime& rt) {
  return rt.initialized && !rt.el.frozen && !particle_halted(world, rt);
}

bool is_head(const AgentRuntime& rt) { return is_head_role(rt.el.role); }

SolitudeChannel& primary_channel(AgentRuntime& rt) { return rt.el.solitude; }

// ---- Instrumentation helpers: global view, never used for decisions -------

int head_of(const World& world, int agent) {
  int h = agent;
  while (!is_head_role(world.peek_agent(h).el.role)) h = world.peek_agent(h).pred;
  return h;
}

std::vector<int> identifier_of(const World& world, int head) {
  std::vector<int> digits;
  int a = head;
  do {
    digits.push_back(world.peek_agent(a).el.digit);
    a = world.peek_agent(a).succ;
  } while (!is_head_role(world.peek_agent(a).el.role));
  return digits;
}

int segment_length(const World& world, int head) { return static_cast<int>(identifier_of(world, head).size()); }

void record_decision(World& world, int candidate, const DigitToken& delimiter, DelimiterOutcome outcome) {
  auto& instr = world.instrumentation();
  ++instr.decisions;
  if (!world.options().check_invariants) return;
  const auto mine = identifier_of(world, candidate);
  const auto theirs = identifier_of(world, head_of(world, delimiter.origin));
  const auto order = oracle::compare_identifiers(mine, theirs);
  const DelimiterOutcome expected = order < 0   ? DelimiterOutcome::withdraw
                                    : order > 0 ? DelimiterOutcome::stay
                                                : DelimiterOutcome::trigger_solitude;
  if (expected != outcome) ++instr.decision_mismatches;
}

void withdraw(World& world, int agent, const char* why) {
  auto& rt = world.agent(agent);
  rt.el.role = Role::withdrawn;
  world.trace(rt.particle, "WITHDRAW", std::string("agent=") + std::to_string(rt.fixed.agent_id) + " why=" + why);
}

// ---- Identifier setup -----------------------------------------------------

void id_setup_step(World& world, int a) {
  auto& me = world.agent(a);
  if (!me.el.id_setup) return;
  auto& succ = world.agent(me.succ);
  if (!succ.initialized) return;
  auto& pred = world.agent(me.pred);
  auto& tok = *me.el.id_setup;
  const bool head = is_head(me);
  const bool last = is_head(succ);

  int hop = 0;  // -1 towards pred, +1 towards succ
  for (int guard = 0; guard < 8 && hop == 0; ++guard) {
    switch (tok.mode) {
      case IdSetupMode::assign:
        me.el.digit = static_cast<int>(world.rng().below(static_cast<std::uint64_t>(world.params().radix)));
        world.trace(me.particle, "DIGIT_ASSIGN",
                    "agent=" + std::to_string(me.fixed.agent_id) + " digit=" + std::to_string(me.el.digit));
        if (!last) {
          hop = 1;
          break;
        }
        me.el.digit_read = true;
        tok.carried = me.el.digit;
        tok.mode = IdSetupMode::carry_to_front;
        break;
      case IdSetupMode::carry_to_front:
        if (!head && !pred.el.reversed_set()) {
          hop = -1;
          break;
        }
        me.el.reversed_digit = tok.carried;
        tok.carried = -1;
        if (last || succ.el.reversed_set()) {
          tok.mode = IdSetupMode::returning;
        } else {
          me.el.digit_read = true;
          tok.carried = me.el.digit;
          tok.mode = IdSetupMode::carry_to_back;
        }
        break;
      case IdSetupMode::carry_to_back:
        if (!last && !succ.el.reversed_set()) {
          hop = 1;
          break;
        }
        me.el.reversed_digit = tok.carried;
        tok.carried = -1;
        tok.mode = head || pred.el.reversed_set() ? IdSetupMode::returning : IdSetupMode::seek_read_back;
        break;
      case IdSetupMode::seek_read_back:
        if (me.el.digit_read) {
          hop = -1;
          break;
        }
        me.el.digit_read = true;
        tok.carried = me.el.digit;
        tok.mode = IdSetupMode::carry_to_front;
        break;
      case IdSetupMode::returning:
        if (!head) {
          hop = -1;
          break;
        }
        me.el.id_setup_complete = true;
        world.instrumentation().phase_rounds["id_setup"] = world.round();
        world.instrumentation().id_setups.push_back(
            {segment_length(world, a), tok.hops, world.round() - tok.start_round + 1});
        me.el.id_setup.reset();
        return;
    }
  }
  if (hop == 0) return;
  auto& target = hop > 0 ? succ : pred;
  if (target.el.id_setup) throw InternalInconsistency("two id-setup tokens in one segment");
  ++tok.hops;
  target.el.id_setup = tok;
  me.el.id_setup.reset();
}

// ---- Identifier comparison ------------------------------------------------

void maybe_emit(World& world, int a) {
  auto& me = world.agent(a);
  if (me.el.emitted || !me.el.reversed_set()) return;
  if (is_head(me) && !me.el.id_setup_complete) return;
  const bool last = is_head(world.agent(me.succ));
  DigitToken t = make_digit_token(me.el.reversed_digit, last);
  t.uid = world.next_token_uid();
  t.origin = a;
  me.el.comparison_fifo.push_back(t);
  me.el.emitted = true;
}

void receive(World& world, int p) {
  auto& rt = world.agent(p);
  auto& t = rt.el.comparison_fifo[rt.el.comparison_fifo.size() - 1];
  const bool matched = comparison_match(rt.el, t, is_head(rt));
  if (matched) {
    world.trace(rt.particle, "MATCH",
                "agent=" + std::to_string(rt.fixed.agent_id) + " digit=" + std::to_string(rt.el.digit) +
                    " token=" + std::to_string(t.digit) + " delimiter=" + std::to_string(t.delimiter ? 1 : 0));
  }
  if (!t.delimiter) return;
  delimiter_traverse(rt.el, t);
  if (rt.el.role == Role::candidate && t.released) {
    const DelimiterOutcome outcome = delimiter_decide(rt.el.longer_seen, matched, t.highest_diff);
    record_decision(world, p, t, outcome);
    world.trace(rt.particle, "DELIM_DECIDE", "agent=" + std::to_string(rt.fixed.agent_id) + " outcome=" + name(outcome));
    switch (outcome) {
      case DelimiterOutcome::withdraw:
        if (rt.el.solitude.running) {
          rt.el.withdraw_after_solitude = true;
        } else {
          withdraw(world, p, "smaller");
        }
        break;
      case DelimiterOutcome::trigger_solitude:
        solitude_start(world, p, primary_solitude());
        break;
      case DelimiterOutcome::stay:
        break;
    }
  }
  rt.el.longer_seen = false;
}

void comparison_forward(World& world, int a) {
  auto& me = world.agent(a);
  if (me.el.comparison_fifo.empty()) return;
  auto& pred = world.agent(me.pred);
  if (!primary_live(world, pred) || !pred.el.emitted || pred.el.comparison_fifo.full()) return;
  DigitToken t = me.el.comparison_fifo.pop_front();
  if (is_head(me)) {
    t.active = true;
    t.released = true;
    t.highest_diff = Comparison::equal;
  }
  ++t.steps;
  pred.el.comparison_fifo.push_back(t);
  world.trace(me.particle, "TOKEN_FWD", "agent=" + std::to_string(me.fixed.agent_id) + " uid=" + std::to_string(t.uid));
  receive(world, me.pred);
}

// ---- Solitude verification ------------------------------------------------

bool vector_accepts(World& world, const AgentRuntime& rt, const SolitudeHooks& hooks) {
  if (!rt.initialized || particle_halted(world, rt)) return false;
  return hooks.backup || !rt.el.frozen;
}

void vector_tokens_step(World& world, int a, const SolitudeHooks& hooks) {
  auto& me = world.agent(a);
  auto& ch = hooks.channel(me);
  const bool anchored = hooks.anchor(me);
  for (std::size_t axis = 0; axis < 2; ++axis) {
    for (std::size_t sign = 0; sign < 2; ++sign) {
      auto& fifo = ch.vectors[axis][sign];
      if (fifo.empty()) continue;
      if (anchored) {
        for (auto& v : fifo) v.settled = true;
        continue;
      }
      auto& pred = world.agent(me.pred);
      auto& ahead = hooks.channel(pred).vectors[axis][sign];
      bool ahead_settled = ahead.full();
      for (const auto& v : ahead) ahead_settled = ahead_settled && v.settled;
      if (ahead_settled) {
        for (auto& v : fifo) v.settled = true;
        continue;
      }
      if (!ahead.full() && !fifo.front().settled && vector_accepts(world, pred, hooks)) {
        VectorToken v = fifo.pop_front();
        v.settled = hooks.anchor(pred);
        ahead.push_back(v);
      }
    }
  }
}

int count_axis(const SolitudeChannel& ch, std::size_t axis, bool* all_settled) {
  int n = 0;
  *all_settled = true;
  for (const auto& fifo : ch.vectors[axis]) {
    for (const auto& v : fifo) {
      ++n;
      *all_settled = *all_settled && v.settled;
    }
  }
  return n;
}

void record_solitude(World& world, int owner, const SolitudeActivation& w, bool sole, const SolitudeHooks& hooks) {
  SolitudeRecord rec{static_cast<int>(w.hops) + 1, world.round() - w.start_round + 1, sole, false, hooks.backup};
  if (world.options().check_invariants) {
    const int cycle = world.peek_agent(owner).cycle;
    std::vector<oracle::GlobalAgent> contenders;
    for (int b : world.graph().cycles[static_cast<std::size_t>(cycle)]) {
      if (hooks.anchor(world.peek_agent(b))) contenders.push_back(world.global_agent(b));
    }
    const auto truth = oracle::ground_truth(world.report(), contenders, std::nullopt);
    rec.truth_sole = truth.sole(world.boundary_of_cycle(cycle));
    if (sole && !rec.truth_sole) ++world.instrumentation().solitude_truth_violations;
  }
  world.instrumentation().solitudes.push_back(rec);
}

std::optional<bool> walker_step(World& world, int a, const SolitudeHooks& hooks) {
  auto& me = world.agent(a);
  auto& ch = hooks.channel(me);
  auto& w = *ch.walker;

  if (!w.returning) {
    auto& succ = world.agent(me.succ);
    if (!vector_accepts(world, succ, hooks)) return std::nullopt;
    const int next = w.departed ? (w.heading + turn_value(me.fixed.empty_seq_len) + 6) % 6 : me.fixed.succ_port;
    const NodeCoord comp = hop_components(next);
    const int parts[2] = {comp.x, comp.y};
    for (std::size_t axis = 0; axis < 2; ++axis) {
      if (parts[axis] != 0 && ch.vectors[axis][parts[axis] > 0 ? 0 : 1].full()) return std::nullopt;
    }
    const bool anchored = hooks.anchor(me);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      if (parts[axis] != 0) ch.vectors[axis][parts[axis] > 0 ? 0 : 1].push_back(VectorToken{anchored});
    }
    w.departed = true;
    w.heading = next;
    if (hooks.anchor(succ)) {
      w.end_agent_id = succ.fixed.agent_id;
      w.returning = true;
      return std::nullopt;
    }
    auto& next_ch = hooks.channel(succ);
    if (next_ch.walker) throw InternalInconsistency("solitude walkers collided");
    ++w.hops;
    next_ch.walker = w;
    ch.walker.reset();
    return std::nullopt;
  }

  const bool at_owner = hooks.anchor(me);
  AxisResult* results[2] = {&w.x, &w.y};
  bool pending_here = false;
  for (std::size_t axis = 0; axis < 2; ++axis) {
    bool settled = false;
    const int count = count_axis(ch, axis, &settled);
    if (*results[axis] == AxisResult::pending) {
      if (count > 0 && settled) {
        *results[axis] = evaluate_axis(static_cast<int>(ch.vectors[axis][0].size()),
                                       static_cast<int>(ch.vectors[axis][1].size()));
      } else if (count == 0 && at_owner) {
        *results[axis] = AxisResult::zero;
      } else if (count > 0) {
        pending_here = true;
      }
    }
    if (*results[axis] != AxisResult::pending) {
      ch.vectors[axis][0].clear();
      ch.vectors[axis][1].clear();
    }
  }
  if (pending_here) return std::nullopt;

  if (at_owner) {
    if (w.x == AxisResult::pending || w.y == AxisResult::pending) return std::nullopt;
    const bool sole = solitude_sole(w, me.fixed.agent_id);
    record_solitude(world, a, w, sole, hooks);
    world.trace(me.particle, "SOLITUDE_RESULT",
                std::string("agent=") + std::to_string(me.fixed.agent_id) + " sole=" + (sole ? "1" : "0") +
                    " extent=" + std::to_string(w.hops + 1) + (hooks.backup ? " backup=1" : ""));
    ch.walker.reset();
    ch.running = false;
    return sole;
  }
  auto& pred = world.agent(me.pred);
  auto& prev_ch = hooks.channel(pred);
  if (prev_ch.walker) throw InternalInconsistency("solitude walkers collided");
  prev_ch.walker = w;
  ch.walker.reset();
  return std::nullopt;
}

// ---- Boundary identification ----------------------------------------------

void boundary_id_step(World& world, int a) {
  auto& me = world.agent(a);
  if (!me.el.boundary_id) return;
  auto& tok = *me.el.boundary_id;
  if (tok.departed && me.el.role == Role::sole_candidate) {
    const BoundaryVerdict v = boundary_id_decide(tok.k_mod5);
    world.instrumentation().boundary_ids.push_back({world.cycle_is_outer(me.cycle), tok.k_mod5, false});
    world.trace(me.particle, "BOUNDARY_ID_RESULT",
                "agent=" + std::to_string(me.fixed.agent_id) + " k=" + std::to_string(tok.k_mod5));
    me.el.boundary_id.reset();
    if (v == BoundaryVerdict::outer) {
      world.instrumentation().phase_rounds.try_emplace("boundary_id", world.round());
      me.el.role = Role::leader_signaled;
      world.declare_leader(me.particle);
    } else {
      withdraw(world, a, v == BoundaryVerdict::inner ? "inner" : "inconsistent");
    }
    return;
  }
  auto& succ = world.agent(me.succ);
  if (!primary_live(world, succ) || succ.el.boundary_id) return;
  BoundaryIdToken moved = tok;
  moved.departed = true;
  moved.k_mod5 = boundary_id_accumulate(moved.k_mod5, succ.fixed.empty_seq_len);
  succ.el.boundary_id = moved;
  me.el.boundary_id.reset();
}

bool primary_anchor_fn(const AgentRuntime& rt) { return primary_anchor(rt); }

}  // namespace

bool primary_anchor(const AgentRuntime& rt) { return rt.initialized && is_contender_role(rt.el.role); }

std::vector<int> segment_identifier(const World& world, int head) { return identifier_of(world, head); }

const SolitudeHooks& primary_solitude() {
  static const SolitudeHooks hooks{&primary_channel, &primary_anchor_fn, false};
  return hooks;
}

bool solitude_start(World& world, int owner, const SolitudeHooks& hooks) {
  auto& rt = world.agent(owner);
  auto& ch = hooks.channel(rt);
  if (ch.running) return false;
  if (ch.walker) throw InternalInconsistency("solitude walker parked at an idle owner");
  ch.running = true;
  SolitudeActivation w;
  w.start_round = world.round();
  ch.walker = w;
  world.trace(rt.particle, "SOLITUDE_START",
              "agent=" + std::to_string(rt.fixed.agent_id) + (hooks.backup ? " backup=1" : ""));
  return true;
}

std::optional<bool> solitude_step(World& world, int agent, const SolitudeHooks& hooks) {
  vector_tokens_step(world, agent, hooks);
  auto& rt = world.agent(agent);
  if (!hooks.channel(rt).walker) return std::nullopt;
  return walker_step(world, agent, hooks);
}

void segment_setup(World& world, int agent, bool heads) {
  auto& rt = world.agent(agent);
  rt.el.role = segment_role(heads);
  world.trace(rt.particle, "COIN", "agent=" + std::to_string(rt.fixed.agent_id) + " heads=" + (heads ? "1" : "0"));
  if (heads) {
    IdSetupToken tok;
    tok.origin = agent;
    tok.start_round = world.round();
    rt.el.id_setup = tok;
  }
}

void primary_step(World& world, int agent) {
  {
    auto& rt = world.agent(agent);
    if (!primary_live(world, rt)) return;
  }
  id_setup_step(world, agent);
  maybe_emit(world, agent);
  comparison_forward(world, agent);
  if (const auto verdict = solitude_step(world, agent, primary_solitude())) {
    auto& rt = world.agent(agent);
    if (rt.el.withdraw_after_solitude) {
      rt.el.withdraw_after_solitude = false;
      withdraw(world, agent, "deferred");
    } else if (*verdict) {
      world.instrumentation().phase_rounds.try_emplace("solitude", world.round());
      rt.el.role = Role::sole_candidate;
      rt.el.boundary_id = BoundaryIdToken{};
    }
  }
  boundary_id_step(world, agent);
}

}  // namespace amoebot::election
