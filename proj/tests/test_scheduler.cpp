#include "amoebot/scheduler.hpp"

#include <sstream>
#include <string>

#include "amoebot/election.hpp"
#include "calibration.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amoebot;

namespace {

int count_events(const std::string& trace, const std::string& event) {
  std::istringstream in(trace);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.find(" " + event) != std::string::npos) ++n;
  return n;
}

bool explained(const RunOutcome& o) {
  return o.success || o.failure == FailureCause::no_outer_candidate || o.failure == FailureCause::identifier_tie;
}

}  // namespace

TEST_SUITE("scheduler examples") {
  TEST_CASE("a single particle leads in round 1") {
    for (std::uint64_t seed : {1ull, 7ull, 123ull}) {
      RunOptions o;
      o.params.seed = seed;
      const auto out = run(testing::config_of({{4, -2}}), o);
      CHECK(out.success);
      CHECK(out.rounds == 1);
      REQUIRE(out.leader);
      CHECK(*out.leader == NodeCoord{4, -2});
    }
  }

  TEST_CASE("line(3), seeds 1..100: leaders sit on the outer boundary") {
    int successes = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      RunOptions o;
      o.params.seed = seed;
      const auto out = run(generate(LineShape{3}, 0), o);
      CHECK(out.leaders_declared <= 1);
      if (out.leader) CHECK(out.leader_on_outer);
      // Without an outer candidate (probability 1/16 here) nobody can win.
      CHECK(explained(out));
      successes += out.success ? 1 : 0;
    }
    CHECK(successes >= 85);
  }

  TEST_CASE("parallelogram(10,10), 100 seeds: rounds within c*L") {
    const auto cfg = generate(ParallelogramShape{10, 10}, 0);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      RunOptions o;
      o.params.seed = seed;
      o.check_invariants = false;
      const auto out = run(cfg, o);
      CHECK(out.L == 36);
      CHECK(explained(out));
      if (out.success) CHECK(static_cast<double>(out.rounds) <= calibration::kRoundsPerL * out.L);
    }
  }

  TEST_CASE("first activation sets the particle up completely") {
    World w(generate(ParallelogramShape{3, 3}, 0), WorldOptions{});
    const auto& p = w.peek_particle(0);
    activate(w, 0);
    CHECK(p.activated);
    for (int a : p.agents) {
      CHECK(w.peek_agent(a).initialized);
      CHECK(w.peek_agent(a).el.role != Role::undecided);
    }
    for (std::size_t q = 1; q < w.particle_count(); ++q) CHECK_FALSE(w.peek_particle(static_cast<int>(q)).activated);
  }

  TEST_CASE("an activation touching a non-neighbour throws") {
    World w(generate(LineShape{4}, 0), WorldOptions{});
    const int far = w.graph().particle_index.at({3, 0});
    const int near = w.graph().particle_index.at({1, 0});
    w.begin_activation(w.graph().particle_index.at({0, 0}));
    CHECK_NOTHROW(w.particle(near));
    CHECK_THROWS_AS(w.particle(far), LocalityViolation);
    CHECK_THROWS_AS(w.agent(w.peek_particle(far).agents.front()), LocalityViolation);
    w.end_activation();
    CHECK_NOTHROW(w.particle(far));
  }

  TEST_CASE("permutation rounds activate every particle exactly once") {
    RunOptions o;
    o.max_rounds = 3;
    const auto out = run(generate(LineShape{5}, 0), o);
    REQUIRE_FALSE(out.leader);
    CHECK(out.activations == 15);
  }

  TEST_CASE("uniform rounds close at the coupon-collector instant") {
    RoundTracker t(2);
    CHECK_FALSE(t.record(0));
    CHECK_FALSE(t.record(0));
    CHECK(t.record(1));
    CHECK_FALSE(t.record(1));
    CHECK(t.record(0));
  }

  TEST_CASE("both policies elect; equality of their leaders is only recorded") {
    const auto cfg = generate(ParallelogramShape{5, 4}, 0);
    int same = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      RunOptions a;
      a.params.seed = seed;
      RunOptions b = a;
      b.scheduler = SchedulerKind::uniform;
      const auto pa = run(cfg, a);
      const auto pb = run(cfg, b);
      CHECK(explained(pa));
      CHECK(explained(pb));
      same += pa.leader && pb.leader && *pa.leader == *pb.leader ? 1 : 0;
    }
    MESSAGE("same leader under both policies in " << same << " of 10 seeds");
  }
}

TEST_SUITE("scheduler properties") {
  TEST_CASE("runs are deterministic in configuration, policy and seed") {
    for (auto kind : {SchedulerKind::permutation, SchedulerKind::uniform}) {
      const auto cfg = generate(RandomConnectedShape{30}, 5);
      std::ostringstream t1, t2;
      RunOptions o;
      o.params.seed = 11;
      o.scheduler = kind;
      o.trace = &t1;
      const auto a = run(cfg, o);
      o.trace = &t2;
      const auto b = run(cfg, o);
      CHECK(t1.str() == t2.str());
      CHECK(a.rounds == b.rounds);
      CHECK(a.activations == b.activations);
      CHECK(a.leader == b.leader);
      CHECK(metrics_row(a) == metrics_row(b));
    }
  }

  TEST_CASE("no trace ever holds two LEADER events") {
    for (int n = 2; n <= 25; ++n)
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        std::ostringstream t;
        RunOptions o;
        o.params.seed = seed;
        o.trace = &t;
        const auto out = run(generate(RandomConnectedShape{n}, seed), o);
        CHECK(count_events(t.str(), "LEADER") == out.leaders_declared);
        CHECK(out.leaders_declared <= 1);
      }
  }

  TEST_CASE("uniform policy activates everyone at least once per round") {
    RunOptions o;
    o.scheduler = SchedulerKind::uniform;
    o.max_rounds = 5;
    const auto out = run(generate(LineShape{6}, 0), o);
    REQUIRE_FALSE(out.leader);
    CHECK(out.activations >= 30);
  }

  TEST_CASE("trace lines have the fixed layout and event names") {
    std::ostringstream t;
    RunOptions o;
    o.trace = &t;
    run(generate(ParallelogramShape{4, 4}, 0), o);
    std::istringstream in(t.str());
    std::string line;
    const std::set<std::string> names{"BOUNDARY_SETUP", "COIN", "DIGIT_ASSIGN", "TOKEN_FWD", "MATCH", "DELIM_DECIDE",
                                      "SOLITUDE_START", "SOLITUDE_RESULT", "BOUNDARY_ID_RESULT", "WITHDRAW", "LEADER"};
    int lines = 0;
    while (std::getline(in, line)) {
      std::istringstream f(line);
      long long round = 0, act = 0;
      int x = 0, y = 0;
      std::string event;
      REQUIRE(static_cast<bool>(f >> round >> act >> x >> y >> event));
      CHECK(names.contains(event));
      ++lines;
    }
    CHECK(lines > 0);
  }

  TEST_CASE("metrics columns") {
    CHECK(metrics_header() == "n,L,C,D,rounds,activations,success,seed,max_state_bytes");
    RunOptions o;
    o.params.seed = 4;
    const auto out = run(generate(LineShape{2}, 0), o);
    const auto row = metrics_row(out);
    CHECK(std::count(row.begin(), row.end(), ',') == 8);
  }

  TEST_CASE("failures are diagnosed") {
    RunOptions o;
    o.params.coin = CoinMode::all_tails;
    o.max_rounds = 50;
    CHECK(run(generate(LineShape{4}, 0), o).failure == FailureCause::no_outer_candidate);
    o.params.coin = CoinMode::all_heads;
    o.params.radix = 1;
    o.max_rounds = 200;
    CHECK(run(generate(LineShape{4}, 0), o).failure == FailureCause::identifier_tie);
  }
}
