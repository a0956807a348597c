#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perc/engine.hpp"
#include "perc/grid.hpp"

namespace perc {

// Layered text: an optional "dims a b c" header, then a blocks of b rows
// of c glyphs separated by blank lines. 'X' marks a seed, '.' an empty
// cell. Lines starting with '#' are comments.
std::string write_seed_text(const CellSet& seeds);
CellSet parse_seed_text(std::string_view text);

struct TextLine {
  std::size_t number = 0;  // 1-based
  std::string_view text;
};

std::vector<TextLine> split_lines(std::string_view text);

// parse_seed_text over already split lines; errors keep their line numbers.
CellSet parse_seed_lines(std::span<const TextLine> lines);

// Parses the layer blocks in `lines` (no header). When `expected` is set
// the shape must match it exactly.
CellSet parse_layer_block(std::span<const TextLine> lines,
                          std::optional<GridDims> expected);

// Layer blocks only, without the header line.
std::string write_layer_block(const CellSet& seeds);

// Trace rendered with one glyph per cell: 'X' for seeds, the infection
// time in base 36 otherwise, '#' for never-infected cells. When some time
// needs more than one base-36 digit, every cell is padded to the same
// width and cells are separated by single spaces.
std::string render_trace(const PercolationTrace& trace);

// Recovers the seed set from rendered text (times are discarded).
CellSet strip_rendered(std::string_view text);

std::string to_base36(std::int64_t value);

}  // namespace perc
