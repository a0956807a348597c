#include <gtest/gtest.h>

#include "perc/bounds.hpp"
#include "perc/error.hpp"
#include "perc/search.hpp"

namespace perc {
namespace {

std::int64_t exhaustive_min(const GridDims& d, bool from_zero = false) {
  ExhaustiveOptions o;
  o.start_at_bound = !from_zero;
  const SearchResult r = min_exhaustive(d, o);
  EXPECT_EQ(r.mode, SearchMode::ExhaustiveProven) << d.to_string();
  EXPECT_TRUE(r.witness.has_value());
  if (r.witness) {
    EXPECT_TRUE(percolate(*r.witness).percolated);
    EXPECT_EQ(static_cast<std::int64_t>(r.witness->size()), *r.min_size);
  }
  return r.min_size.value_or(-1);
}

TEST(Exhaustive, KnownMinima) {
  EXPECT_EQ(exhaustive_min(GridDims{2, 3, 3}), 8);
  EXPECT_EQ(exhaustive_min(GridDims{1, 3, 3}), 5);
  EXPECT_EQ(exhaustive_min(GridDims{1, 1, 4}), 4);
  EXPECT_EQ(exhaustive_min(GridDims{3, 3, 3}), 9);
}

TEST(Exhaustive, RefusesLargeGrids) {
  EXPECT_THROW(min_exhaustive(GridDims{2, 4, 4}), CapacityError);
}

TEST(Exhaustive, BudgetExhaustionIsFailedWithProgress) {
  ExhaustiveOptions o;
  o.node_budget = 10;
  const SearchResult r = min_exhaustive(GridDims{3, 3, 3}, o);
  EXPECT_EQ(r.mode, SearchMode::Failed);
  EXPECT_FALSE(r.note.empty());
}

TEST(Exhaustive, ThresholdTwo) {
  ExhaustiveOptions o;
  o.threshold = 2;
  // Two cells on a diagonal fill a 2x2 square under the 2-neighbour rule.
  EXPECT_EQ(*min_exhaustive(GridDims{1, 2, 2}, o).min_size, 2);
  EXPECT_EQ(*min_exhaustive(GridDims{1, 4, 4}, o).min_size, 4);
}

// Enumeration from the forced-cell count upward never goes below the
// surface bound.
TEST(Exhaustive, OracleNeverBeatsTheBound) {
  for (int a = 1; a <= 24; ++a) {
    for (int b = a; a * b <= 24; ++b) {
      for (int c = b; a * b * c <= 24; ++c) {
        const GridDims d{a, b, c};
        EXPECT_GE(exhaustive_min(d, true), lower_bound(d).ceil) << d.to_string();
      }
    }
  }
}

TEST(Exhaustive, ThreadCountDoesNotChangeTheWitness) {
  ExhaustiveOptions one;
  one.threads = 1;
  ExhaustiveOptions many;
  many.threads = 4;
  const auto r1 = min_exhaustive(GridDims{2, 3, 4}, one);
  const auto r4 = min_exhaustive(GridDims{2, 3, 4}, many);
  EXPECT_EQ(r1.min_size, r4.min_size);
  EXPECT_EQ(r1.witness, r4.witness);
}

TEST(ClosedForm22c, Values) {
  EXPECT_EQ(min_22c(8), 13);
  EXPECT_EQ(min_22c(2), 4);
  EXPECT_EQ(min_22c(3), 5);
  EXPECT_EQ(min_22c(1), 2);
}

TEST(ClosedForm22c, AgreesWithEnumerationExceptAtThree) {
  EXPECT_EQ(exhaustive_min(GridDims{2, 2, 2}, true), min_22c(2));
  EXPECT_EQ(exhaustive_min(GridDims{2, 2, 4}, true), min_22c(4));
  EXPECT_EQ(exhaustive_min(GridDims{2, 2, 5}, true), min_22c(5));
  // At c = 3 the closed form (5) is below the surface bound (16/3, so 6);
  // enumeration finds 6.
  EXPECT_EQ(exhaustive_min(GridDims{2, 2, 3}, true), 6);
  EXPECT_LT(min_22c(3), lower_bound(GridDims{2, 2, 3}).ceil);
}

TEST(AtBound, CubeIsQuick) {
  const SearchResult r = find_at_bound(GridDims{3, 3, 3}, 9);
  ASSERT_EQ(r.mode, SearchMode::HeuristicWitness);
  EXPECT_EQ(classify(*r.witness).status, Status::Perfect);
  EXPECT_EQ(r.rng_seed, 1u);
}

TEST(AtBound, SmallOptimalWitness) {
  const SearchResult r = find_at_bound(GridDims{3, 4, 4}, 14);
  ASSERT_EQ(r.mode, SearchMode::HeuristicWitness);
  EXPECT_EQ(classify(*r.witness).status, Status::Optimal);
}

TEST(AtBound, SporadicFourSixNine) {
  AtBoundOptions o;
  o.rng_seed = 3;
  const SearchResult r = find_at_bound(GridDims{4, 6, 9}, 38, o);
  ASSERT_EQ(r.mode, SearchMode::HeuristicWitness);
  EXPECT_EQ(classify(*r.witness).status, Status::Perfect);
}

TEST(AtBound, TargetBelowBoundIsRejected) {
  EXPECT_THROW(find_at_bound(GridDims{3, 4, 4}, 13), InputError);
}

TEST(AtBound, Deterministic) {
  AtBoundOptions o;
  o.rng_seed = 42;
  const auto r1 = find_at_bound(GridDims{3, 4, 5}, lower_bound(GridDims{3, 4, 5}).ceil, o);
  const auto r2 = find_at_bound(GridDims{3, 4, 5}, lower_bound(GridDims{3, 4, 5}).ceil, o);
  EXPECT_EQ(r1.mode, r2.mode);
  EXPECT_EQ(r1.witness, r2.witness);
  EXPECT_EQ(r1.nodes_explored, r2.nodes_explored);
}

TEST(AtBound, ImpossibleTargetFails) {
  AtBoundOptions o;
  o.budget = 200'000;
  o.anneal.trial_moves = 50'000;
  const SearchResult r = find_at_bound(GridDims{2, 3, 3}, 7, o);
  EXPECT_EQ(r.mode, SearchMode::Failed);
  EXPECT_FALSE(r.witness.has_value());
}

}  // namespace
}  // namespace perc
