#include "amoebot/oracle.hpp"

#include <vector>

#include "doctest.h"
#include "support.hpp"

using namespace amoebot;
using oracle::BoundaryKind;

namespace {

std::strong_ordering cmp(std::vector<int> a, std::vector<int> b) { return oracle::compare_identifiers(a, b); }

}  // namespace

TEST_SUITE("oracle examples") {
  TEST_CASE("parallelogram(10,10): one outer boundary of 36 particles") {
    const auto r = oracle::classify_boundaries(generate(ParallelogramShape{10, 10}, 0));
    REQUIRE(r.boundaries.size() == 1);
    CHECK(r.boundaries[0].kind == BoundaryKind::outer);
    CHECK(r.inner_count() == 0);
    CHECK(r.C == 2 * 10 + 2 * 10 - 4);
    CHECK(r.n == 100);
  }

  TEST_CASE("annulus(2,1): one outer and one inner boundary of six agents") {
    const auto r = oracle::classify_boundaries(generate(AnnulusShape{2, 1}, 0));
    REQUIRE(r.boundaries.size() == 2);
    CHECK(r.boundaries[0].kind == BoundaryKind::outer);
    CHECK(r.boundaries[1].kind == BoundaryKind::inner);
    CHECK(r.boundaries[1].agent_cycle.size() == 6);
  }

  TEST_CASE("line(3): L = 4") { CHECK(oracle::classify_boundaries(generate(LineShape{3}, 0)).L == 4); }

  TEST_CASE("square-root bound verdicts") {
    const auto sq = oracle::classify_boundaries(generate(ParallelogramShape{10, 10}, 0));
    CHECK(sq.L == 36);
    CHECK(oracle::sqrt_bound_check(sq));
    CHECK(oracle::sqrt_bound_check(oracle::classify_boundaries(generate(LineShape{1}, 0))));
    const auto line5 = oracle::classify_boundaries(generate(LineShape{5}, 0));
    CHECK(line5.L == 8);
    CHECK(oracle::sqrt_bound_check(line5));
  }

  TEST_CASE("identifiers compare by length first") {
    CHECK(cmp({7}, {0, 0}) == std::strong_ordering::less);
    CHECK(cmp({5, 2}, {5, 3}) == std::strong_ordering::less);
    CHECK(cmp({4, 4}, {4, 4}) == std::strong_ordering::equal);
  }

  TEST_CASE("ground truth: one active candidate on the outer boundary is sole") {
    const auto r = oracle::classify_boundaries(generate(LineShape{3}, 0));
    const std::vector<oracle::GlobalAgent> active{r.boundaries[0].agent_cycle[1]};
    CHECK(oracle::ground_truth(r, active, std::nullopt).sole(0));
  }

  TEST_CASE("ground truth: a leader on a hole's boundary only is flagged") {
    // The hole of annulus(3,1) is ringed by particles that are not on the
    // outer boundary.
    const auto r = oracle::classify_boundaries(generate(AnnulusShape{3, 1}, 0));
    REQUIRE(r.inner_count() == 1);
    const NodeCoord inner_only = *r.boundaries[1].particle_set.begin();
    REQUIRE_FALSE(r.boundaries[0].particle_set.contains(inner_only));
    CHECK_FALSE(oracle::ground_truth(r, {}, inner_only).leader_on_outer);
    CHECK(oracle::ground_truth(r, {}, *r.boundaries[0].particle_set.begin()).leader_on_outer);
  }

  TEST_CASE("ground truth: three candidates mid-comparison are not sole") {
    const auto r = oracle::classify_boundaries(generate(ParallelogramShape{4, 4}, 0));
    const auto& c = r.boundaries[0].agent_cycle;
    const std::vector<oracle::GlobalAgent> active{c[0], c[3], c[7]};
    const auto t = oracle::ground_truth(r, active, std::nullopt);
    CHECK(t.active_candidates[0] == 3);
    CHECK_FALSE(t.sole(0));
  }
}

TEST_SUITE("oracle properties") {
  TEST_CASE("exactly one outer boundary, L at least sqrt(n)") {
    auto shapes = testing::fixed_shapes();
    for (int n = 1; n <= 60; ++n)
      for (std::uint64_t s = 0; s < 4; ++s) shapes.push_back(generate(RandomConnectedShape{n}, s * 1000 + static_cast<std::uint64_t>(n)));
    for (const auto& cfg : shapes) {
      const auto r = oracle::classify_boundaries(cfg);
      if (r.n == 1) {
        CHECK(r.boundaries.empty());
        continue;
      }
      CHECK(r.boundaries.size() - static_cast<std::size_t>(r.inner_count()) == 1);
      CHECK(r.outer() == &r.boundaries[0]);
      CHECK(oracle::sqrt_bound_check(r));
    }
  }

  TEST_CASE("diameter of simple shapes") {
    CHECK(oracle::diameter(generate(LineShape{7}, 0).occupied) == 6);
    CHECK(oracle::diameter(generate(ParallelogramShape{4, 4}, 0).occupied) == 6);
    CHECK(oracle::diameter({{0, 0}}) == 0);
  }

  TEST_CASE("cyclic equality ignores rotation only") {
    const std::vector<oracle::GlobalAgent> a{{{0, 0}, 1, 2}, {{1, 0}, 2, 3}, {{2, 0}, 3, 4}};
    const std::vector<oracle::GlobalAgent> rot{a[2], a[0], a[1]};
    const std::vector<oracle::GlobalAgent> rev{a[2], a[1], a[0]};
    CHECK(oracle::cyclic_equal(a, rot));
    CHECK_FALSE(oracle::cyclic_equal(a, rev));
  }

  TEST_CASE("identifier order is a total order consistent with length") {
    for (int la = 1; la <= 3; ++la)
      for (int lb = 1; lb <= 3; ++lb) {
        const std::vector<int> a(static_cast<std::size_t>(la), 9), b(static_cast<std::size_t>(lb), 0);
        CHECK((la < lb) == (cmp(a, b) == std::strong_ordering::less));
      }
  }
}
