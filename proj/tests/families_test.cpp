#include <gtest/gtest.h>

#include "perc/error.hpp"
#include "perc/families.hpp"
#include "test_support.hpp"

namespace perc {
namespace {

const FamilyPattern& shipped(const std::string& id) {
  const auto& lib = test::shipped_families();
  const auto it = lib.find(id);
  if (it == lib.end()) throw std::runtime_error("no shipped pattern " + id);
  return it->second;
}

TEST(FamilySpecs, Table) {
  EXPECT_EQ(known_families().size(), 7u);
  const FamilySpec& s = family_spec("4x7c4");
  EXPECT_EQ(s.a, 4);
  EXPECT_EQ(s.b, 7);
  EXPECT_EQ(s.residue, 4);
  EXPECT_EQ(s.min_c, 10);
  EXPECT_EQ(s.block_seeds(), 22);
  EXPECT_TRUE(s.admits(16));
  EXPECT_FALSE(s.admits(4));
  EXPECT_FALSE(s.admits(13));
  EXPECT_THROW(family_spec("3x3"), InputError);
}

TEST(Families, AllShippedPatternsAreLoaded) {
  for (const FamilySpec& s : known_families()) {
    EXPECT_TRUE(test::shipped_families().contains(s.id)) << s.id;
  }
}

TEST(Families, SpecExamples) {
  const CatalogEntry e255 = assemble_family(shipped("2x5"), 5);
  EXPECT_EQ(e255.dims, (GridDims{2, 5, 5}));
  EXPECT_EQ(e255.seeds.size(), 15u);
  EXPECT_EQ(e255.status, Status::Perfect);
  EXPECT_EQ(e255.provenance, Provenance::from_family("2x5", 5));

  EXPECT_EQ(assemble_family(shipped("2x6"), 24).seeds.size(), 68u);
  EXPECT_EQ(assemble_family(shipped("4x4c1"), 7).seeds.size(), 24u);
}

// Size equals the bound and the assembly percolates for every admissible c
// up to the test cap.
TEST(Families, EveryAdmissibleWidthUpToCap) {
  for (const FamilySpec& s : known_families()) {
    const FamilyPattern& p = shipped(s.id);
    for (int c = s.min_c; c <= 60; c += 6) {
      const CatalogEntry e = assemble_family(p, c);
      EXPECT_EQ(3 * static_cast<std::int64_t>(e.seeds.size()),
                lower_bound(e.dims).numerator)
          << s.id << " c=" << c;
      EXPECT_EQ(e.status, Status::Perfect) << s.id << " c=" << c;
    }
  }
}

TEST(Families, InadmissibleWidth) {
  EXPECT_THROW(assemble_family(shipped("2x5"), 8), InputError);
  EXPECT_THROW(assemble_family(shipped("4x4c4"), 4), InputError);
}

TEST(Families, BlockWithWrongSeedCountIsRejectedBeforeSimulation) {
  FamilyPattern p = shipped("2x6");
  const auto idx = p.block.indices();
  p.block.erase(idx.front());
  EXPECT_THROW(validate_pattern(p), InputError);
  EXPECT_THROW(assemble_seeds(p, 12), InputError);
}

TEST(Families, FileRoundTrip) {
  for (const auto& [id, p] : test::shipped_families()) {
    const std::string text = write_family(p);
    const FamilyPattern back = parse_family(text);
    EXPECT_EQ(write_family(back), text);
    EXPECT_EQ(back.block, p.block);
  }
}

TEST(Families, FileErrorsCarryLineNumbers) {
  std::string text = write_family(shipped("2x6"));
  const auto at = text.find("block\n");
  text.insert(at + 6 + 11, "?");  // inside the first block row
  try {
    parse_family(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 10u);
  }
  EXPECT_THROW(parse_family("perc-family 1\nfamily 9x9\n"), ParseError);
}

TEST(Discovery, FindsTheSixFamilyQuickly) {
  DiscoveryOptions o;
  o.budget = 200'000'000;
  const FamilyPattern p = discover_family(family_spec("2x6"), o);
  for (int c : {6, 12, 18, 24}) {
    EXPECT_EQ(assemble_family(p, c).status, Status::Perfect);
  }
  // Same seed, same pattern.
  EXPECT_EQ(write_family(discover_family(family_spec("2x6"), o)), write_family(p));
}

TEST(Discovery, TinyBudgetReportsBestCandidate) {
  DiscoveryOptions o;
  o.budget = 1000;
  o.anneal.trial_moves = 1000;
  try {
    discover_family(family_spec("4x7c1"), o);
    FAIL();
  } catch (const DiscoveryFailed& e) {
    EXPECT_GT(e.cost(), 0);
    EXPECT_EQ(e.best().spec.id, "4x7c1");
    EXPECT_EQ(static_cast<int>(e.best().block.size()), 22);
  }
}

}  // namespace
}  // namespace perc
