#include "amoebot/config.hpp"

#include "amoebot/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amoebot;

namespace {

ConfigErrorKind parse_error(std::string_view text) {
  try {
    parse_configuration(text);
  } catch (const ConfigError& e) {
    return e.kind();
  }
  FAIL("text parsed without error");
  return ConfigErrorKind::syntax;
}

bool has_issue(const ValidationReport& r, ConfigErrorKind k) {
  for (const auto& i : r.issues)
    if (i.kind == k) return true;
  return false;
}

}  // namespace

TEST_SUITE("config examples") {
  TEST_CASE("single contracted particle") {
    const auto cfg = parse_configuration("amoebot-config v1\n0 0\n");
    CHECK(cfg.occupied == std::set<NodeCoord>{{0, 0}});
    CHECK(cfg.expanded_pairs.empty());
  }

  TEST_CASE("two far nodes are disconnected") {
    CHECK(parse_error("amoebot-config v1\n0 0\n5 5\n") == ConfigErrorKind::disconnected);
  }

  TEST_CASE("four numbers on a line make one expanded particle") {
    const auto cfg = parse_configuration("amoebot-config v1\n0 0 1 0\n");
    CHECK(cfg.occupied == std::set<NodeCoord>{{0, 0}, {1, 0}});
    REQUIRE(cfg.expanded_pairs.size() == 1);
    CHECK(cfg.expanded_pairs.begin()->first == NodeCoord{0, 0});
    CHECK(cfg.expanded_pairs.begin()->second == NodeCoord{1, 0});
  }

  TEST_CASE("parallelogram(10,10) has 100 particles and 36 on the outside") {
    const auto cfg = generate(ParallelogramShape{10, 10}, 0);
    CHECK(cfg.node_count() == 100);
    const auto report = oracle::classify_boundaries(cfg);
    CHECK(report.C == 36);
    CHECK(report.inner_count() == 0);
  }

  TEST_CASE("line(3) is collinear with four outer agents") {
    const auto cfg = generate(LineShape{3}, 0);
    CHECK(cfg.occupied == std::set<NodeCoord>{{0, 0}, {1, 0}, {2, 0}});
    CHECK(oracle::classify_boundaries(cfg).L == 4);
  }

  TEST_CASE("annulus(2,1) is a ring of six around one hole") {
    const auto cfg = generate(AnnulusShape{2, 1}, 0);
    CHECK(cfg.node_count() == 6);
    CHECK_FALSE(cfg.occupied.contains({0, 0}));
    const auto report = oracle::classify_boundaries(cfg);
    REQUIRE(report.inner_count() == 1);
    CHECK(report.boundaries[1].agent_cycle.size() == 6);
  }

  TEST_CASE("validate: single node") { CHECK(validate(testing::config_of({{0, 0}}), false).ok()); }

  TEST_CASE("validate: diagonal non-adjacent nodes") {
    CHECK(has_issue(validate(testing::config_of({{0, 0}, {1, 1}}), false), ConfigErrorKind::disconnected));
  }

  TEST_CASE("validate: expanded pair over an unoccupied node") {
    auto cfg = testing::config_of({{0, 0}});
    cfg.expanded_pairs.insert(ExpandedPair::make({0, 0}, {1, 0}));
    CHECK(has_issue(validate(cfg, true), ConfigErrorKind::bad_expanded_pair));
  }
}

TEST_SUITE("config errors") {
  TEST_CASE("syntax errors carry line numbers") {
    try {
      parse_configuration("amoebot-config v1\n0 0\n1 x\n");
      FAIL("expected a syntax error");
    } catch (const ConfigError& e) {
      CHECK(e.kind() == ConfigErrorKind::syntax);
      CHECK(e.line() == 3);
    }
    CHECK(parse_error("0 0\n") == ConfigErrorKind::syntax);
    CHECK(parse_error("amoebot-config v1\n0 0 1\n") == ConfigErrorKind::syntax);
    CHECK(parse_error("amoebot-config v1\n") == ConfigErrorKind::empty);
  }

  TEST_CASE("duplicates and bad pairs") {
    CHECK(parse_error("amoebot-config v1\n0 0\n0 0\n") == ConfigErrorKind::duplicate_node);
    CHECK(parse_error("amoebot-config v1\n0 0 2 0\n") == ConfigErrorKind::bad_expanded_pair);
    CHECK(parse_error("amoebot-config v1\n0 0 1 0\n1 0 1 1\n") == ConfigErrorKind::duplicate_node);
  }

  TEST_CASE("comments and blank lines are ignored") {
    const auto cfg = parse_configuration("# header next\namoebot-config v1\n\n0 0  # origin\n 1 0\n");
    CHECK(cfg.node_count() == 2);
  }

  TEST_CASE("expanded pairs need the expanded flag") {
    const auto cfg = parse_configuration("amoebot-config v1\n0 0 1 0\n");
    CHECK(has_issue(validate(cfg, false), ConfigErrorKind::expanded_not_enabled));
    CHECK(validate(cfg, true).ok());
    CHECK_THROWS_AS(require_valid(cfg, false), ConfigError);
  }

  TEST_CASE("bad shape parameters") {
    CHECK_THROWS_AS(generate(LineShape{0}, 0), InvalidShapeParams);
    CHECK_THROWS_AS(generate(ParallelogramShape{0, 3}, 0), InvalidShapeParams);
    CHECK_THROWS_AS(generate(AnnulusShape{2, 2}, 0), InvalidShapeParams);
    CHECK_THROWS_AS(generate(AnnulusShape{3, 0}, 0), InvalidShapeParams);
    CHECK_THROWS_AS(generate(RandomConnectedShape{0}, 0), InvalidShapeParams);
  }
}

TEST_SUITE("config properties") {
  TEST_CASE("serialize then parse is the identity") {
    auto shapes = testing::fixed_shapes();
    shapes.push_back(parse_configuration("amoebot-config v1\n0 0\n1 0 2 0\n3 0\n"));
    for (int n = 1; n <= 30; ++n) shapes.push_back(generate(RandomConnectedShape{n}, 77));
    for (const auto& cfg : shapes) CHECK(parse_configuration(serialize_configuration(cfg)) == cfg);
  }

  TEST_CASE("generate is deterministic in shape and seed") {
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
      CHECK(generate(RandomConnectedShape{25}, seed) == generate(RandomConnectedShape{25}, seed));
    }
    CHECK(generate(RandomConnectedShape{25}, 1) != generate(RandomConnectedShape{25}, 2));
  }

  TEST_CASE("random_connected yields exactly n connected nodes") {
    for (int n = 1; n <= 60; ++n)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto cfg = generate(RandomConnectedShape{n}, seed);
        CHECK(cfg.node_count() == static_cast<std::size_t>(n));
        CHECK(is_connected(cfg.occupied));
      }
  }

  TEST_CASE("port offsets are reproducible and in range") {
    for (int x = -5; x <= 5; ++x) {
      const int o = port_offset(42, {x, -x});
      CHECK(o >= 0);
      CHECK(o < 6);
      CHECK(o == port_offset(42, {x, -x}));
    }
  }
}
