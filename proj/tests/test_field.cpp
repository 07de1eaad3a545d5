#include <gtest/gtest.h>

#include "glrmc/field_matrix.hpp"
#include "glrmc/rng.hpp"

using namespace glrmc;

namespace {

FieldMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, const PrimeField& f) {
  FieldMatrix m(r, c, f);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.below(f.prime()));
  return m;
}

}  // namespace

TEST(Field, PrimalityTest) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(kDefaultPrime));
  EXPECT_TRUE(is_prime(1'000'000'007));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(561));  // Carmichael
  EXPECT_FALSE(is_prime(4'294'967'297ULL));
  EXPECT_THROW(PrimeField(91), Error);
  try {
    PrimeField f(100);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
}

TEST(Field, Arithmetic) {
  const PrimeField f(7);
  EXPECT_EQ(f.add(5, 4), 2u);
  EXPECT_EQ(f.sub(2, 5), 4u);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_THROW(f.inv(0), Error);
}

TEST(Field, RankOfKnownMatrices) {
  const PrimeField f(kDefaultPrime);
  const FieldMatrix a(2, 3, f, {1, 2, 3, 2, 4, 6});
  EXPECT_EQ(field_rank(a), 1u);
  EXPECT_EQ(field_rank(FieldMatrix::identity(4, f)), 4u);
  EXPECT_EQ(field_rank(FieldMatrix(3, 3, f)), 0u);
  // singular mod 5 only
  const FieldMatrix b(2, 2, PrimeField(5), {1, 2, 3, 1});
  EXPECT_EQ(field_rank(b), 1u);
}

TEST(Field, NullSpacesAnnihilate) {
  Rng rng(11);
  const PrimeField f(kDefaultPrime);
  for (int t = 0; t < 100; ++t) {
    const auto r = 1 + rng.below(6), c = 1 + rng.below(6), k = rng.below(std::min(r, c) + 1);
    const auto a = random_matrix(rng, r, k, f) * random_matrix(rng, k, c, f);
    const auto rank = field_rank(a);
    const auto left = left_null_space(a);
    const auto right = right_null_space(a);
    EXPECT_EQ(left.rows(), r - rank);
    EXPECT_EQ(right.rows(), c - rank);
    EXPECT_TRUE((left * a).is_zero());
    EXPECT_TRUE((a * right.transposed()).is_zero());
    if (left.rows()) EXPECT_EQ(field_rank(left), left.rows());
  }
}

TEST(Field, InverseAndSolve) {
  Rng rng(12);
  const PrimeField f(kDefaultPrime);
  for (int t = 0; t < 50; ++t) {
    const auto n = 1 + rng.below(6);
    const auto a = random_matrix(rng, n, n, f);
    const auto inv = inverse(a);
    if (field_rank(a) < n) {
      EXPECT_FALSE(inv);
      continue;
    }
    ASSERT_TRUE(inv);
    EXPECT_EQ(a * *inv, FieldMatrix::identity(n, f));
    std::vector<std::uint64_t> b(n);
    for (auto& v : b) v = rng.below(f.prime());
    const auto x = solve(a, b);
    ASSERT_TRUE(x);
    const auto ax = a * FieldMatrix(n, 1, f, *x);
    EXPECT_EQ(ax.data(), b);
  }
  const FieldMatrix s(2, 2, f, {1, 1, 1, 1});
  EXPECT_FALSE(inverse(s));
  EXPECT_FALSE(solve(s, {1, 2}));
  EXPECT_EQ(*solve(s, {3, 3}), (std::vector<std::uint64_t>{3, 0}));
  EXPECT_THROW(inverse(FieldMatrix(2, 3, f)), Error);
}

TEST(Field, ConstructionChecks) {
  const PrimeField f(7);
  EXPECT_THROW(FieldMatrix(2, 2, f, {1, 2, 3}), Error);
  EXPECT_THROW(FieldMatrix(1, 1, f, {7}), Error);
  FieldMatrix m(1, 1, f);
  EXPECT_THROW(m.set(1, 0, 1), Error);
  EXPECT_THROW(m.at(0, 1), Error);
}
