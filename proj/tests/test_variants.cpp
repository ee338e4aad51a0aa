#include "amoebot/variants.hpp"

#include <sstream>
#include <string>

#include "amoebot/scheduler.hpp"
#include "calibration.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amoebot;

namespace {

int count_lines(const std::string& trace, const std::string& needle) {
  std::istringstream in(trace);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

RunOptions almost_sure(std::uint64_t seed) {
  RunOptions o;
  o.params.seed = seed;
  o.params.almost_sure = true;
  o.settle_almost_sure = true;
  return o;
}

}  // namespace

TEST_SUITE("variants examples: almost-sure election") {
  TEST_CASE("a lone contender never eliminates itself") {
    for (bool flip : {false, true}) CHECK_FALSE(variants::eliminated(flip, flip, flip));
    CHECK(variants::eliminated(false, true, true));
    CHECK_FALSE(variants::eliminated(true, true, true));
    CHECK_FALSE(variants::eliminated(false, false, true));
  }

  TEST_CASE("forced ties stall the first election, the second one elects") {
    const auto cfg = generate(ParallelogramShape{4, 4}, 0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      RunOptions base;
      base.params.seed = seed;
      base.params.radix = 1;
      base.params.coin = CoinMode::all_heads;
      const auto stalled = run(cfg, base);
      CHECK_FALSE(stalled.leader);
      CHECK(stalled.failure == FailureCause::identifier_tie);

      RunOptions as = almost_sure(seed);
      as.params.radix = 1;
      as.params.coin = CoinMode::all_heads;
      const auto out = run(cfg, as);
      CHECK(out.success);
      CHECK(out.leaders_declared == 1);
      CHECK(out.rounds <= 200 * out.L);
    }
  }

  TEST_CASE("when the first election wins, the second one's survivor withdraws") {
    const auto cfg = generate(ParallelogramShape{4, 3}, 0);
    int primary_first = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      std::ostringstream t;
      RunOptions o = almost_sure(seed);
      o.trace = &t;
      const auto out = run(cfg, o);
      CHECK(out.success);
      CHECK(out.leaders_declared == 1);
      const bool second_won = count_lines(t.str(), "why=leader_seen") == 0;
      if (!second_won) {
        ++primary_first;
        CHECK(count_lines(t.str(), "why=leader_seen") == 1);
      }
    }
    CHECK(primary_first > 0);
  }
}

TEST_SUITE("variants examples: expanded particles") {
  TEST_CASE("one expanded particle alone elects a leader") {
    const auto cfg = parse_configuration("amoebot-config v1\n0 0 1 0\n");
    RunOptions o;
    o.params.expanded = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      o.params.seed = seed;
      const auto out = run(cfg, o);
      CHECK(out.n == 2);
      CHECK((out.success || out.failure == FailureCause::no_outer_candidate ||
             out.failure == FailureCause::identifier_tie));
    }
  }

  TEST_CASE("line(4) with its middle pair expanded keeps the contracted boundaries") {
    const auto expanded = parse_configuration("amoebot-config v1\n0 0\n1 0 2 0\n3 0\n");
    const auto contracted = generate(LineShape{4}, 0);
    CHECK(expanded.occupied == contracted.occupied);
    const auto re = oracle::classify_boundaries(expanded);
    const auto rc = oracle::classify_boundaries(contracted);
    REQUIRE(re.boundaries.size() == rc.boundaries.size());
    CHECK(oracle::cyclic_equal(re.boundaries[0].agent_cycle, rc.boundaries[0].agent_cycle));
    CHECK(testing::cycles_match_oracle(expanded, 4));
  }

  TEST_CASE("back-to-back activation still reaches every virtual particle each round") {
    const auto cfg = parse_configuration("amoebot-config v1\n0 0\n1 0 2 0\n3 0\n0 1 1 1\n");
    WorldOptions wo;
    wo.params.expanded = true;
    World w(cfg, wo);
    const auto units = variants::scheduling_units(w, true);
    CHECK(units.size() == 4);
    std::vector<int> seen(w.particle_count(), 0);
    for (const auto& u : units)
      for (int p : u) ++seen[static_cast<std::size_t>(p)];
    for (int s : seen) CHECK(s == 1);

    RunOptions o;
    o.params.expanded = true;
    o.max_rounds = 1;
    const auto out = run(cfg, o);
    CHECK(out.activations == 4);
  }

  TEST_CASE("expanded pairs without the flag are rejected") {
    const auto cfg = parse_configuration("amoebot-config v1\n0 0 1 0\n");
    try {
      run(cfg, RunOptions{});
      FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
      CHECK(e.kind() == ConfigErrorKind::expanded_not_enabled);
    }
  }
}

TEST_SUITE("variants examples: termination broadcast") {
  TEST_CASE("a single particle terminates in the round it leads") {
    RunOptions o;
    o.params.termination_broadcast = true;
    const auto out = run(testing::config_of({{0, 0}}), o);
    CHECK(out.success);
    REQUIRE(out.termination_round);
    CHECK(*out.termination_round == out.rounds);
  }

  TEST_CASE("lines terminate within c*D rounds of the election") {
    for (int n : {4, 8, 16, 24}) {
      const auto cfg = generate(LineShape{n}, 0);
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        RunOptions o;
        o.params.seed = seed;
        o.params.termination_broadcast = true;
        o.post_termination_rounds = 3;
        const auto out = run(cfg, o);
        if (!out.success) continue;
        REQUIRE(out.termination_round);
        CHECK(out.D == n - 1);
        CHECK(*out.termination_round - out.rounds <= calibration::kBroadcastPerD * out.D);
        CHECK(out.quiescent_after_termination);
      }
    }
  }
}

TEST_SUITE("variants properties") {
  TEST_CASE("with the second election on, every run ends with exactly one leader") {
    for (int n = 2; n <= 20; ++n) {
      const std::uint64_t seed = static_cast<std::uint64_t>(n) * 31;
      const auto out = run(generate(RandomConnectedShape{n}, seed), almost_sure(seed));
      CHECK(out.success);
      CHECK(out.leaders_declared == 1);
      CHECK(out.instrumentation.solitude_truth_violations == 0);
    }
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      RunOptions o = almost_sure(seed);
      o.params.coin = CoinMode::all_tails;
      const auto out = run(generate(AnnulusShape{3, 1}, 0), o);
      CHECK(out.success);
      CHECK(out.leaders_declared == 1);
    }
  }

  TEST_CASE("nothing changes after everyone has terminated") {
    for (int n = 3; n <= 30; n += 3) {
      const std::uint64_t seed = static_cast<std::uint64_t>(n);
      RunOptions o;
      o.params.seed = seed;
      o.params.termination_broadcast = true;
      o.post_termination_rounds = 10;
      const auto out = run(generate(RandomConnectedShape{n}, seed), o);
      if (!out.leader) continue;
      REQUIRE(out.termination_round);
      CHECK(out.quiescent_after_termination);
    }
  }

  TEST_CASE("expanded systems produce the oracle's boundaries") {
    const std::string text = "amoebot-config v1\n0 0 1 0\n2 0 2 1\n0 1\n1 2 0 2\n3 -1\n";
    const auto cfg = parse_configuration(text);
    CHECK(validate(cfg, true).ok());
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) CHECK(testing::cycles_match_oracle(cfg, seed));
    RunOptions o;
    o.params.expanded = true;
    o.params.almost_sure = true;
    const auto out = run(cfg, o);
    CHECK(out.success);
  }
}
