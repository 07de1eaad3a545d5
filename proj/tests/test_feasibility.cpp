#include <gtest/gtest.h>

#include "glrmc/feasibility.hpp"
#include "support.hpp"

using namespace glrmc;
using test::fixture;

namespace {
const auto kExhaustive = BasisSampler::exhaustive();
}

TEST(Assumption, ScreensTrivialAndNarrowPatterns) {
  const auto m = fixture("example1.pat");
  const auto a = assumption1_holds(m, 1);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.grank_bar, 2u);
  const auto zero = parse_pattern("??\n??\n");
  EXPECT_FALSE(assumption1_holds(zero, 1).rank_exceeds_target);
  const auto tall = parse_pattern("*\n*\n");
  EXPECT_FALSE(assumption1_holds(tall, 1).wide_enough);
  EXPECT_THROW(assumption1_holds(m, 0), Error);
  EXPECT_THROW(assumption1_holds(m, 3), Error);
}

TEST(Preservable, BasisSizeAndRank) {
  const auto m = fixture("example2.pat");
  EXPECT_TRUE(is_preservable_basis(m, ColumnSet{0, 1}, 1));
  EXPECT_THROW(is_preservable_basis(m, ColumnSet{0}, 1), Error);
  const auto z = parse_pattern("*0*\n*0*\n");
  EXPECT_FALSE(is_preservable_basis(z, ColumnSet{1}, 1));
  EXPECT_THROW(k1_conditions_hold(z, ColumnSet{1}), Error);
}

TEST(RankOne, FeasiblePatternWithWitness) {
  const auto m = fixture("example1.pat");
  const auto v = glrmc_k1(m, kExhaustive);
  EXPECT_EQ(v.status, Status::Feasible);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(verify_witness(m, 1, *v.witness));
  EXPECT_TRUE(v.exhaustive);
}

TEST(RankOne, InfeasiblePrimedPattern) {
  const auto m = fixture("example1-prime.pat");
  const auto v = glrmc_k1(m, kExhaustive);
  EXPECT_EQ(v.status, Status::Infeasible);
  EXPECT_FALSE(v.witness);
  ASSERT_TRUE(v.counterexample);
  EXPECT_TRUE(v.counterexample->basis.has_value());
}

TEST(RankOne, ThreeByFourWitnessBases) {
  const auto m = fixture("example2.pat");
  const auto v = glrmc_k1(m, kExhaustive);
  ASSERT_EQ(v.status, Status::Feasible);
  EXPECT_EQ(v.witness->basis, (ColumnSet{0, 1}));
  for (const auto& basis : test::subsets(4, 2)) {
    EXPECT_TRUE(is_preservable_basis(m, ColumnSet(basis), 1));
    EXPECT_EQ(k1_conditions_hold(m, ColumnSet(basis)).holds, test::brute_k1_conditions(m, basis));
  }
  const auto check = k1_conditions_hold(m, ColumnSet{0, 1});
  ASSERT_TRUE(check.holds);
  ASSERT_EQ(check.evidence.size(), 2u);
  EXPECT_EQ(check.evidence[0].column, 2u);
  EXPECT_EQ(check.evidence[0].row, 2u);
  EXPECT_EQ(check.evidence[1].column, 3u);
  EXPECT_EQ(check.evidence[1].row, 0u);
}

TEST(RankOne, RandomizedModeNeverClaimsInfeasible) {
  const auto m = fixture("example1-prime.pat");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = glrmc_k1(m, BasisSampler::randomized(3, seed));
    EXPECT_EQ(v.status, Status::Unknown);
    EXPECT_EQ(v.rng_seed, seed);
  }
}

TEST(RankOne, TrivialWhenBarRankIsLow) {
  const auto v = glrmc_k1(parse_pattern("*??\n*??\n"), kExhaustive);
  EXPECT_EQ(v.status, Status::Feasible);
  EXPECT_TRUE(v.trivial);
}

TEST(RankOne, NarrowPatternIsRejected) {
  try {
    glrmc_k1(parse_pattern("*\n*\n"), kExhaustive);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(RankOne, MatchesBruteForceDecision) {
  Rng rng(303);
  for (int t = 0; t < 1500; ++t) {
    const auto n = 2 + rng.below(3), m = n + rng.below(3);
    const auto p = test::random_pattern(rng, n, m, 0.45, 0.3);
    const auto v = glrmc_k1(p, kExhaustive);
    ASSERT_EQ(v.status == Status::Feasible, test::brute_k1_feasible(p)) << p.to_text();
  }
}

TEST(RankOne, MatchingAndSetFormsAgreePerBasis) {
  Rng rng(404);
  for (int t = 0; t < 600; ++t) {
    const auto n = 2 + rng.below(4), m = n + rng.below(3);
    const auto p = test::random_pattern(rng, n, m, 0.45, 0.3);
    for_each_combination<ColumnSet>(m, n - 1, [&](const ColumnSet& basis) {
      if (!is_preservable_basis(p, basis, 1)) return false;
      const auto a = k1_conditions_hold(p, basis);
      const auto b = k1_conditions_hold_setwise(p, basis);
      EXPECT_EQ(a.holds, b.holds) << p.to_text() << basis.to_string();
      EXPECT_EQ(a.holds, test::brute_k1_conditions(p, basis.values()));
      if (a.holds) { EXPECT_EQ(a.evidence, b.evidence); }
      return false;
    });
  }
}

TEST(RankFormula, OverlapValuesForSingleColumnBasis) {
  const auto m = fixture("example3.pat");
  const auto relaxed = with_basis_columns(m, ColumnSet{0});
  const auto c2 = lemma8_S_nonempty(relaxed, ColumnSet{0}, 1);
  EXPECT_TRUE(c2.nonempty);
  EXPECT_EQ(c2.rho, 1u);
  const auto c4 = lemma8_S_nonempty(relaxed, ColumnSet{0}, 3);
  EXPECT_FALSE(c4.nonempty);
  EXPECT_EQ(c4.rho, 2u);
}

TEST(RankFormula, Preconditions) {
  const auto m = fixture("example3.pat");
  EXPECT_THROW(lemma8_S_nonempty(m, ColumnSet{1}, 0), Error);  // ? inside the basis block
  const auto relaxed = with_basis_columns(m, ColumnSet{0});
  EXPECT_THROW(lemma8_S_nonempty(relaxed, ColumnSet{0}, 0), Error);
  EXPECT_THROW(lemma8_S_nonempty(relaxed, ColumnSet{0}, 9), Error);
}

TEST(RankFormula, AgreesWithEnumeratedFamilies) {
  Rng rng(505);
  std::size_t checked = 0;
  for (int t = 0; t < 700; ++t) {
    const auto n = 2 + rng.below(3), m = n + rng.below(3), k = 1 + rng.below(n);
    const auto p = test::random_pattern(rng, n, m, 0.45, 0.3);
    for (const auto& cols : test::subsets(m, n - k)) {
      if (!test::brute_preservable(p, cols)) continue;
      const ColumnSet basis(cols);
      const auto relaxed = with_basis_columns(p, basis);
      for (std::size_t c = 0; c < m; ++c) {
        if (basis.contains(c)) continue;
        const auto got = lemma8_S_nonempty(relaxed, basis, c);
        const auto want = test::brute_rho(p, cols, k, c);
        ASSERT_EQ(got.rho, want.rho) << p.to_text() << basis.to_string() << " col " << c;
        ASSERT_EQ(got.nonempty, want.s_nonempty) << p.to_text() << basis.to_string() << " col " << c;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(HigherK, ThreeByFourIsInfeasibleAtRankOne) {
  const auto m = fixture("example3.pat");
  const auto s = glrmc_k_sufficient(m, 2, kExhaustive);
  EXPECT_EQ(s.status, Status::Unknown);
  const auto nv = glrmc_k_necessary(m, 2, kExhaustive, kExhaustive, {10'000, false});
  EXPECT_EQ(nv.status, Status::NecessaryFails);
  ASSERT_TRUE(nv.counterexample);
  EXPECT_EQ(nv.counterexample->row_subsets, (std::vector<RowSet>{RowSet{0, 2}, RowSet{1, 2}}));
  for (const auto& rows : nv.counterexample->row_subsets) EXPECT_TRUE(verify_violation(m, 2, rows));
  EXPECT_FALSE(verify_violation(m, 2, RowSet{0, 1}));
  const auto first = glrmc_k_necessary(m, 2, kExhaustive, kExhaustive);
  EXPECT_EQ(first.counterexample->row_subsets.size(), 1u);
}

TEST(HigherK, SufficientWitnessReverifies) {
  const auto m = fixture("M1.pat");
  const auto v = glrmc_k_sufficient(m, 1, kExhaustive);
  ASSERT_EQ(v.status, Status::SufficientHolds);
  EXPECT_TRUE(verify_witness(m, 1, *v.witness));
  for (const auto& e : v.witness->columns) EXPECT_TRUE(e.rho.has_value());
}

TEST(HigherK, NecessaryAtKOneDelegatesToExactTest) {
  const auto m = fixture("example1-prime.pat");
  const auto v = glrmc_k_necessary(m, 1, kExhaustive, kExhaustive);
  EXPECT_EQ(v.status, Status::Infeasible);
  EXPECT_EQ(v.necessary_holds, false);
}

TEST(HigherK, SufficientImpliesNecessaryHolds) {
  Rng rng(606);
  for (int t = 0; t < 400; ++t) {
    const auto n = 3 + rng.below(2), m = n + rng.below(2), k = 2 + rng.below(n - 1);
    const auto p = test::random_pattern(rng, n, m, 0.5, 0.3);
    const auto s = glrmc_k_sufficient(p, k, kExhaustive);
    if (s.status != Status::SufficientHolds) continue;
    const auto nv = glrmc_k_necessary(p, k, kExhaustive, kExhaustive);
    EXPECT_NE(nv.status, Status::NecessaryFails) << p.to_text() << "k=" << k;
  }
}

TEST(HigherK, InvalidKThrows) {
  const auto m = fixture("example3.pat");
  EXPECT_THROW(glrmc_k_sufficient(m, 0, kExhaustive), Error);
  EXPECT_THROW(glrmc_k_necessary(m, 4, kExhaustive, kExhaustive), Error);
}
