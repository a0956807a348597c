#include <gtest/gtest.h>

#include <random>

#include "perc/bounds.hpp"
#include "perc/error.hpp"
#include "test_support.hpp"

namespace perc {
namespace {

TEST(LowerBound, Examples) {
  const LowerBound b466 = lower_bound(GridDims{4, 6, 6});
  EXPECT_EQ(b466.numerator, 84);
  EXPECT_EQ(b466.ceil, 28);
  EXPECT_TRUE(b466.integral());
  EXPECT_EQ(b466.to_string(), "84/3 = 28");

  const LowerBound b7711 = lower_bound(GridDims{7, 7, 11});
  EXPECT_EQ(b7711.numerator, 203);
  EXPECT_EQ(b7711.ceil, 68);
  EXPECT_FALSE(b7711.integral());
  EXPECT_EQ(b7711.to_string(), "203/3");
  EXPECT_EQ(b7711.exact(), boost::rational<std::int64_t>(203, 3));

  EXPECT_EQ(lower_bound(GridDims{1, 3, 3}).exact(), boost::rational<std::int64_t>(5));
}

TEST(LowerBound, SymmetricUnderPermutation) {
  for (int a = 1; a <= 7; ++a) {
    for (int b = 1; b <= 7; ++b) {
      for (int c = 1; c <= 7; ++c) {
        const auto n = lower_bound(GridDims{a, b, c}).numerator;
        EXPECT_EQ(n, lower_bound(GridDims{c, a, b}).numerator);
        EXPECT_EQ(n, lower_bound(GridDims{b, a, c}).numerator);
      }
    }
  }
}

TEST(PerfectPrecondition, Examples) {
  EXPECT_TRUE(perfect_precondition(GridDims{4, 6, 9}));
  EXPECT_FALSE(perfect_precondition(GridDims{2, 3, 4}));
  EXPECT_TRUE(perfect_precondition(GridDims{3, 3, 3}));
}

TEST(PerfectPrecondition, AgreesWithDivisibility) {
  for (int a = 1; a <= 18; ++a) {
    for (int b = 1; b <= 18; ++b) {
      for (int c = 1; c <= 18; ++c) {
        EXPECT_EQ(perfect_precondition(GridDims{a, b, c}), (a * b + a * c + b * c) % 3 == 0);
      }
    }
  }
}

TEST(Status, NamesRoundTrip) {
  for (Status s : {Status::NotPercolating, Status::Percolating, Status::Optimal, Status::Perfect}) {
    EXPECT_EQ(parse_status(to_string(s)), s);
  }
  EXPECT_THROW(parse_status("great"), InputError);
  EXPECT_LT(Status::Optimal, Status::Perfect);
}

TEST(Classify, DiamondIsPerfect) {
  const std::vector<Cell> cells{{1, 1, 1}, {1, 1, 3}, {1, 2, 2}, {1, 3, 1}, {1, 3, 3}};
  const auto cls = classify(CellSet::from_cells(GridDims{1, 3, 3}, cells));
  EXPECT_TRUE(cls.percolates);
  EXPECT_EQ(cls.size, 5);
  EXPECT_EQ(cls.status, Status::Perfect);
}

TEST(Classify, EightOn233IsOptimalOnly) {
  // A minimum witness found by exhaustive search.
  const GridDims d{2, 3, 3};
  const std::vector<Cell> cells{{1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 3, 1},
                                {1, 3, 3}, {2, 1, 1}, {2, 2, 3}, {2, 3, 2}};
  const CellSet s = CellSet::from_cells(d, cells);
  const auto cls = classify(s);
  ASSERT_TRUE(cls.percolates);
  EXPECT_EQ(cls.bound.ceil, 7);
  EXPECT_EQ(cls.status, Status::Percolating);
}

TEST(Classify, FullGridIsOnlyPercolating) {
  const auto cls = classify(CellSet::full(GridDims{3, 3, 3}));
  EXPECT_EQ(cls.status, Status::Percolating);
}

TEST(Classify, NonPercolating) {
  CellSet s(GridDims{3, 3, 3});
  s.insert(Cell{2, 2, 2});
  EXPECT_EQ(classify(s).status, Status::NotPercolating);
}

TEST(Classify, TruncatedTraceIsAnError) {
  const std::vector<Cell> cells{{1, 1, 1}, {1, 1, 3}, {1, 2, 2}, {1, 3, 1}, {1, 3, 3}};
  const CellSet s = CellSet::from_cells(GridDims{1, 3, 3}, cells);
  EXPECT_THROW(classify(percolate(s, 3, 0), s), TruncatedSimulation);
}

TEST(Audit, PerfectWitnessPassesEverything) {
  const std::vector<Cell> cells{{1, 1, 1}, {1, 1, 3}, {1, 2, 2}, {1, 3, 1}, {1, 3, 3}};
  const CellSet s = CellSet::from_cells(GridDims{1, 3, 3}, cells);
  const auto a = perfect_audit(percolate(s), s);
  EXPECT_TRUE(a.all_hold());
  EXPECT_TRUE(a.surface_constant);
  EXPECT_TRUE(a.offending.empty());
}

TEST(Audit, AdjacentSeedsFailIndependence) {
  CellSet s = CellSet::full(GridDims{2, 2, 2});
  const auto a = perfect_audit(percolate(s), s);
  EXPECT_FALSE(a.seeds_independent);
  EXPECT_FALSE(a.all_hold());
  EXPECT_FALSE(a.offending.empty());
}

// The three audit conditions hold exactly when the surface quantity stays
// constant, and a percolating set with constant surface is size-tight.
TEST(Audit, ConditionsMatchConstantSurface) {
  std::mt19937_64 rng(99);
  for (int run = 0; run < 300; ++run) {
    const CellSet s = test::random_set(GridDims{3, 3, 4}, 0.3, rng);
    const auto t = percolate(s);
    const auto a = perfect_audit(t, s);
    // Seed independence is not a property of the steps.
    EXPECT_EQ(a.exact_three && a.no_simultaneous_adjacent, a.surface_constant);
    if (t.percolated && a.all_hold()) {
      EXPECT_EQ(classify(t, s).status, Status::Perfect);
    }
  }
}

}  // namespace
}  // namespace perc
