#include <gtest/gtest.h>

#include "glrmc/bounds.hpp"
#include "support.hpp"

using namespace glrmc;
using test::fixture;

namespace {

BoundsOptions exhaustive() {
  BoundsOptions o;
  o.mode = SamplerMode::Exhaustive;
  return o;
}

}  // namespace

struct FrozenBounds {
  const char* file;
  std::size_t lower;
  std::size_t upper;
};

class BoundsFixture : public ::testing::TestWithParam<FrozenBounds> {};

// Values computed once with the exhaustive samplers and cross-checked
// against the finite-field oracle's minimum rank.
TEST_P(BoundsFixture, ExhaustiveBoundsAreFrozen) {
  const auto& p = GetParam();
  const auto b = rank_bounds(fixture(p.file), exhaustive());
  EXPECT_EQ(b.lower, p.lower);
  EXPECT_EQ(b.upper, p.upper);
  EXPECT_TRUE(b.consistent);
  EXPECT_LE(b.upper, b.grank_bar);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, BoundsFixture,
                         ::testing::Values(FrozenBounds{"M1.pat", 2, 3}, FrozenBounds{"M2.pat", 2, 3},
                                           FrozenBounds{"M3.pat", 3, 3},
                                           FrozenBounds{"example1-prime.pat", 2, 2},
                                           FrozenBounds{"example2.pat", 2, 2}));

TEST(Bounds, AllQueryPatternHasRankZero) {
  const auto b = rank_bounds(parse_pattern("???\n???\n???\n"), exhaustive());
  EXPECT_EQ(b.lower, 0u);
  EXPECT_EQ(b.upper, 0u);
}

TEST(Bounds, AllStarPatternIsFullRank) {
  const auto b = rank_bounds(parse_pattern("****\n****\n****\n"), exhaustive());
  EXPECT_EQ(b.lower, 3u);
  EXPECT_EQ(b.upper, 3u);
}

TEST(Bounds, UpperWitnessReverifies) {
  const auto m = fixture("M1.pat");
  const auto u = upper_bound(m, exhaustive());
  ASSERT_TRUE(u.witness);
  EXPECT_TRUE(verify_witness(m, m.rows() - u.value, *u.witness));
  const auto l = lower_bound(m, exhaustive());
  if (l.value > 0) {
    ASSERT_TRUE(l.violation);
    EXPECT_TRUE(verify_violation(m, m.rows() - l.value + 1, *l.violation));
  }
  EXPECT_FALSE(u.trace.empty());
}

TEST(Bounds, RandomizedRunsAreSeedDeterministic) {
  const auto m = fixture("M3.pat");
  BoundsOptions o;
  o.seed = 99;
  const auto a = rank_bounds(m, o);
  const auto b = rank_bounds(m, o);
  EXPECT_EQ(a.lower_detail, b.lower_detail);
  EXPECT_EQ(a.upper_detail, b.upper_detail);
}

TEST(Bounds, InvariantOnRandomPatterns) {
  Rng rng(707);
  for (int t = 0; t < 300; ++t) {
    const auto n = 2 + rng.below(3), m = n + rng.below(3);
    const auto p = test::random_pattern(rng, n, m, 0.5, 0.25);
    const auto b = rank_bounds(p, exhaustive());
    ASSERT_LE(b.lower, b.upper) << p.to_text();
    ASSERT_LE(b.upper, b.grank_bar) << p.to_text();
    ASSERT_EQ(b.grank_bar, test::kuhn_rank_all(p, false));
  }
}
