#include <gtest/gtest.h>

#include <random>

#include "perc/engine.hpp"
#include "perc/error.hpp"
#include "perc/text_format.hpp"
#include "test_support.hpp"

namespace perc {
namespace {

TEST(SeedText, WriterLayout) {
  CellSet s(GridDims{2, 2, 3});
  s.insert(Cell{1, 1, 1});
  s.insert(Cell{2, 2, 3});
  EXPECT_EQ(write_seed_text(s), "dims 2 2 3\nX..\n...\n\n...\n..X\n");
}

TEST(SeedText, RoundTripOnRandomSets) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> side(1, 7);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int run = 0; run < 200; ++run) {
    const GridDims d{side(rng), side(rng), side(rng)};
    const CellSet s = test::random_set(d, density(rng), rng);
    const std::string text = write_seed_text(s);
    const CellSet back = parse_seed_text(text);
    EXPECT_EQ(back, s);
    EXPECT_EQ(write_seed_text(back), text);
  }
}

TEST(SeedText, HeaderIsOptionalAndCommentsAreSkipped) {
  const CellSet s = parse_seed_text("# a comment\nX.\n.X\n\n..\nX.\n");
  EXPECT_EQ(s.dims(), (GridDims{2, 2, 2}));
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(parse_seed_text("dims 1 1 2\r\nX.\r\n").size(), 1u);
}

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse_seed_text(text);
    FAIL() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

TEST(SeedText, RaggedRow) { expect_parse_error("X..\nX.\n", 2, 3); }

TEST(SeedText, UnknownGlyph) { expect_parse_error("X..\n.o.\n", 2, 2); }

TEST(SeedText, LayerShapesDiffer) { expect_parse_error("X.\n..\n\nX.\n", 4, 1); }

TEST(SeedText, HeaderMismatch) {
  EXPECT_THROW(parse_seed_text("dims 2 2 2\nX.\n..\n"), ParseError);
  EXPECT_THROW(parse_seed_text("dims 1 2 2\nX.\n..\n..\n"), ParseError);
  EXPECT_THROW(parse_seed_text("dims 1 2\nX.\n"), ParseError);
}

TEST(SeedText, EmptyInput) {
  EXPECT_THROW(parse_seed_text(""), ParseError);
  EXPECT_THROW(parse_seed_text("dims 1 1 1\n"), ParseError);
}

TEST(Base36, Digits) {
  EXPECT_EQ(to_base36(0), "0");
  EXPECT_EQ(to_base36(9), "9");
  EXPECT_EQ(to_base36(10), "a");
  EXPECT_EQ(to_base36(35), "z");
  EXPECT_EQ(to_base36(36), "10");
}

TEST(Render, GlyphsAndStrip) {
  const std::vector<Cell> cells{{1, 1, 1}, {1, 1, 3}, {1, 2, 2}, {1, 3, 1}, {1, 3, 3}};
  const CellSet s = CellSet::from_cells(GridDims{1, 3, 3}, cells);
  const std::string text = render_trace(percolate(s));
  EXPECT_EQ(text, "# steps 1, percolated yes\ndims 1 3 3\nX1X\n1X1\nX1X\n");
  EXPECT_EQ(strip_rendered(text), s);
}

TEST(Render, NeverInfectedCells) {
  CellSet s(GridDims{1, 1, 3});
  s.insert(Cell{1, 1, 2});
  EXPECT_EQ(render_trace(percolate(s)), "# steps 0, percolated no\ndims 1 1 3\n#X#\n");
}

TEST(Render, WideTimesArePadded) {
  // A long path of threshold-1 infections needs two-digit times.
  CellSet s(GridDims{1, 1, 40});
  s.insert(Cell{1, 1, 1});
  const auto t = percolate(s, 1);
  const std::string text = render_trace(t);
  EXPECT_NE(text.find(" X  1  2"), std::string::npos) << text;
  EXPECT_NE(text.find("13"), std::string::npos);
  EXPECT_EQ(strip_rendered(text), s);
}

TEST(Render, StripRoundTripsRandomTraces) {
  std::mt19937_64 rng(3);
  for (int run = 0; run < 100; ++run) {
    const CellSet s = test::random_set(GridDims{2, 5, 9}, 0.2, rng);
    EXPECT_EQ(strip_rendered(render_trace(percolate(s))), s);
  }
}

}  // namespace
}  // namespace perc
