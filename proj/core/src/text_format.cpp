#include "perc/text_format.hpp"

#include <charconv>
#include <sstream>

#include "perc/error.hpp"

namespace perc {
namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

bool is_comment(std::string_view s) { return !s.empty() && s.front() == '#'; }

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view token, const TextLine& line) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    const auto col = static_cast<std::size_t>(token.data() - line.text.data()) + 1;
    throw ParseError(line.number, col,
                     "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

// Parses "dims a b c".
GridDims parse_dims_line(const TextLine& line) {
  const auto t = tokens(line.text);
  if (t.size() != 4 || t[0] != "dims") {
    throw ParseError(line.number, 1, "expected 'dims a b c'");
  }
  try {
    return GridDims::make(parse_int(t[1], line), parse_int(t[2], line),
                          parse_int(t[3], line));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(line.number, 1, e.what());
  }
}

// A rendered row is either contiguous glyphs or space-separated cells.
std::vector<std::string_view> row_cells(std::string_view row) {
  std::vector<std::string_view> out;
  if (row.find(' ') == std::string_view::npos) {
    for (std::size_t i = 0; i < row.size(); ++i) out.push_back(row.substr(i, 1));
  } else {
    out = tokens(row);
  }
  return out;
}

template <typename CellParser>
CellSet parse_layers(std::span<const TextLine> lines,
                     std::optional<GridDims> expected, bool rendered,
                     CellParser&& is_seed) {
  std::vector<std::vector<const TextLine*>> layers;
  bool in_layer = false;
  for (const TextLine& line : lines) {
    // In rendered text '#' is the never-infected glyph, so comments are
    // only taken before the dims line.
    if (!rendered && is_comment(line.text)) continue;
    if (is_blank(line.text)) {
      in_layer = false;
      continue;
    }
    if (!in_layer) {
      layers.emplace_back();
      in_layer = true;
    }
    layers.back().push_back(&line);
  }
  const std::size_t fallback_line = lines.empty() ? 1 : lines.back().number;
  if (layers.empty()) {
    throw ParseError(fallback_line, 1, "no layers found");
  }
  const std::size_t rows = layers.front().size();
  const std::size_t cols =
      rendered ? row_cells(layers.front().front()->text).size()
               : layers.front().front()->text.size();
  if (expected) {
    if (layers.size() != static_cast<std::size_t>(expected->a)) {
      throw ParseError(fallback_line, 1,
                       "expected " + std::to_string(expected->a) +
                           " layers, found " + std::to_string(layers.size()));
    }
    if (rows != static_cast<std::size_t>(expected->b)) {
      throw ParseError(layers.front().front()->number, 1,
                       "expected " + std::to_string(expected->b) +
                           " rows per layer, found " + std::to_string(rows));
    }
    if (cols != static_cast<std::size_t>(expected->c)) {
      throw ParseError(layers.front().front()->number, 1,
                       "expected " + std::to_string(expected->c) +
                           " columns, found " + std::to_string(cols));
    }
  }
  GridDims dims;
  try {
    dims = GridDims::make(static_cast<std::int64_t>(layers.size()),
                          static_cast<std::int64_t>(rows),
                          static_cast<std::int64_t>(cols));
  } catch (const InputError& e) {
    throw ParseError(layers.front().front()->number, 1, e.what());
  }
  CellSet out(dims);
  for (std::size_t x = 0; x < layers.size(); ++x) {
    const auto& layer = layers[x];
    if (layer.size() != rows) {
      throw ParseError(layer.front()->number, 1,
                       "layer " + std::to_string(x + 1) + " has " +
                           std::to_string(layer.size()) + " rows, expected " +
                           std::to_string(rows));
    }
    for (std::size_t y = 0; y < rows; ++y) {
      const TextLine& line = *layer[y];
      const auto glyphs = rendered ? row_cells(line.text)
                                   : std::vector<std::string_view>{};
      const std::size_t width = rendered ? glyphs.size() : line.text.size();
      if (width != cols) {
        throw ParseError(line.number, std::min(width, cols) + 1,
                         "ragged row: " + std::to_string(width) +
                             " cells, expected " + std::to_string(cols));
      }
      for (std::size_t z = 0; z < cols; ++z) {
        const std::string_view glyph =
            rendered ? glyphs[z] : line.text.substr(z, 1);
        const std::size_t column =
            static_cast<std::size_t>(glyph.data() - line.text.data()) + 1;
        if (is_seed(glyph, line.number, column)) {
          out.insert(Cell{static_cast<int>(x) + 1, static_cast<int>(y) + 1,
                          static_cast<int>(z) + 1});
        }
      }
    }
  }
  return out;
}

bool seed_glyph(std::string_view glyph, std::size_t line, std::size_t column) {
  if (glyph == "X") return true;
  if (glyph == ".") return false;
  throw ParseError(line, column, "unknown glyph '" + std::string(glyph) + "'");
}

bool rendered_glyph(std::string_view glyph, std::size_t line,
                    std::size_t column) {
  if (glyph == "X") return true;
  if (glyph == "#") return false;
  for (char ch : glyph) {
    if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z'))) {
      throw ParseError(line, column,
                       "unknown glyph '" + std::string(glyph) + "'");
    }
  }
  return false;
}

// Splits off an optional header, returning the remaining lines.
std::span<const TextLine> take_header(std::span<const TextLine> lines,
                                      std::optional<GridDims>& dims) {
  std::size_t i = 0;
  while (i < lines.size() &&
         (is_comment(lines[i].text) || is_blank(lines[i].text))) {
    ++i;
  }
  if (i < lines.size() && lines[i].text.starts_with("dims")) {
    dims = parse_dims_line(lines[i]);
    return lines.subspan(i + 1);
  }
  return lines;
}

}  // namespace

std::vector<TextLine> split_lines(std::string_view text) {
  std::vector<TextLine> out;
  std::size_t number = 1;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(TextLine{number++, line});
    start = end + 1;
  }
  return out;
}

CellSet parse_layer_block(std::span<const TextLine> lines,
                          std::optional<GridDims> expected) {
  return parse_layers(lines, expected, false, seed_glyph);
}

std::string write_layer_block(const CellSet& seeds) {
  const GridDims& d = seeds.dims();
  std::string out;
  out.reserve(static_cast<std::size_t>(d.cells() + d.a * (d.b + 1)));
  std::size_t i = 0;
  for (int x = 0; x < d.a; ++x) {
    if (x > 0) out += '\n';
    for (int y = 0; y < d.b; ++y) {
      for (int z = 0; z < d.c; ++z) out += seeds.contains(i++) ? 'X' : '.';
      out += '\n';
    }
  }
  return out;
}

std::string write_seed_text(const CellSet& seeds) {
  const GridDims& d = seeds.dims();
  return "dims " + std::to_string(d.a) + " " + std::to_string(d.b) + " " +
         std::to_string(d.c) + "\n" + write_layer_block(seeds);
}

CellSet parse_seed_lines(std::span<const TextLine> lines) {
  std::optional<GridDims> dims;
  const auto body = take_header(lines, dims);
  return parse_layer_block(body, dims);
}

CellSet parse_seed_text(std::string_view text) {
  return parse_seed_lines(split_lines(text));
}

std::string to_base36(std::int64_t value) {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.insert(out.begin(), kDigits[value % 36]);
    value /= 36;
  }
  return out;
}

std::string render_trace(const PercolationTrace& trace) {
  const GridDims& d = trace.dims;
  std::size_t width = 1;
  for (std::int32_t t : trace.infection_time) {
    if (t > 0) width = std::max(width, to_base36(t).size());
  }
  std::ostringstream out;
  out << "# steps " << trace.steps_taken << ", percolated "
      << (trace.percolated ? "yes" : "no") << '\n';
  out << "dims " << d.a << ' ' << d.b << ' ' << d.c << '\n';
  std::size_t i = 0;
  for (int x = 0; x < d.a; ++x) {
    if (x > 0) out << '\n';
    for (int y = 0; y < d.b; ++y) {
      for (int z = 0; z < d.c; ++z, ++i) {
        const std::int32_t t = trace.infection_time[i];
        std::string glyph = t == 0 ? "X" : t == kNever ? "#" : to_base36(t);
        if (width > 1) {
          if (z > 0) out << ' ';
          out << std::string(width - glyph.size(), ' ');
        }
        out << glyph;
      }
      out << '\n';
    }
  }
  return out.str();
}

CellSet strip_rendered(std::string_view text) {
  const auto lines = split_lines(text);
  std::optional<GridDims> dims;
  const auto body = take_header(lines, dims);
  // Right-aligned padding puts leading spaces on rows; tokens handle it.
  return parse_layers(body, dims, true, rendered_glyph);
}

}  // namespace perc
