#include "perc/recipes.hpp"

#include "perc/combine.hpp"
#include "perc/error.hpp"

namespace perc {
namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Recipe family(int a, int b, int c, std::string id) {
  Recipe r;
  r.dims = GridDims{a, b, c};
  r.need = Status::Perfect;
  r.kind = Recipe::Kind::Family;
  r.family = std::move(id);
  r.family_c = c;
  r.rule = "periodic family " + r.family;
  return r;
}

Recipe split(GridDims dims, Status need, int a1, int b1, int c1, std::string rule) {
  Recipe r;
  r.dims = dims;
  r.need = need;
  r.kind = Recipe::Kind::Split;
  r.split = {a1, b1, c1};
  r.rule = std::move(rule) + ": split at " + triple(a1, b1, c1);
  return r;
}

Recipe generic(GridDims dims, Status need, std::string rule) {
  Recipe r;
  r.dims = dims;
  r.need = need;
  r.kind = Recipe::Kind::Generic;
  r.rule = std::move(rule);
  return r;
}

int mod(int x, int m) { return ((x % m) + m) % m; }

// The value in [lo, lo+5] congruent to `side - 3` mod 6, so that
// side - result ≡ 3 (mod 6).
int leave_three(int side, int lo) { return lo + mod(side - 3 - lo, 6); }

// For a = 9 the first part may only use 2, 4, 5, 7.
int leave_three_no_multiple_of_three(int side) {
  const int v = leave_three(side, 2);
  if (v % 3 == 0) {
    throw InputError("side " + std::to_string(side) + " is divisible by 3");
  }
  return v;
}

}  // namespace

std::array<GridDims, 4> Recipe::parts() const {
  if (kind != Kind::Split) throw std::logic_error("parts() on a non-split recipe");
  return octant_parts(dims, split[0], split[1], split[2]);
}

std::string to_string(Recipe::Kind kind) {
  switch (kind) {
    case Recipe::Kind::Family: return "family";
    case Recipe::Kind::Stored: return "stored";
    case Recipe::Kind::Split: return "split";
    case Recipe::Kind::Generic: return "generic";
  }
  return "?";
}

Recipe perfect4_recipe(int b, int c) {
  if (b > c) std::swap(b, c);
  if (b < 4 || mod(b - c, 3) != 0 || mod(b, 3) == 2) {
    throw InputError("(4," + std::to_string(b) + "," + std::to_string(c) +
                     ") needs b ≡ c ≡ 0 or 1 (mod 3) and b, c >= 4");
  }
  const GridDims dims{4, b, c};
  if (b == 4 && c == 4) {
    return split(dims, Status::Perfect, 2, 2, 2, "cube of side 4");
  }
  if (b == 4 || b == 7) {
    const bool odd = c % 2 == 1;
    return family(4, b, c, (b == 4 ? "4x4" : "4x7") + std::string(odd ? "c1" : "c4"));
  }
  if ((b == 6 || b == 9) && (c == 6 || c == 9)) {
    if (b == 6 && c == 6) {
      return split(dims, Status::Perfect, 1, 3, 3, "b = c = 6");
    }
    Recipe r;
    r.dims = dims;
    r.need = Status::Perfect;
    r.kind = Recipe::Kind::Stored;
    r.rule = "b, c in {6, 9}: stored witness";
    return r;
  }
  if (b % 3 == 0) {
    if (b == 6) return split(dims, Status::Perfect, 2, 3, 6, "b = 6, c >= 12");
    if (mod(b - c, 2) == 0) {
      return split(dims, Status::Perfect, 2, 3, 6, "b ≡ c ≡ 0 (mod 3), same parity");
    }
    return split(dims, Status::Perfect, 2, 6, 6, "b ≡ c ≡ 0 (mod 3), mixed parity");
  }
  if (b == 10 && c == 10) return split(dims, Status::Perfect, 2, 5, 5, "b = c = 10");
  if (mod(b - c, 2) == 0) {
    return split(dims, Status::Perfect, 2, 5, 8, "b ≡ c ≡ 1 (mod 3), same parity");
  }
  return split(dims, Status::Perfect, 2, 5, 5, "b ≡ c ≡ 1 (mod 3), mixed parity");
}

Recipe optimal_recipe(int a, int b, int c) {
  if (!(7 <= a && a <= b && b <= c)) {
    throw InputError("optimal dispatch needs 7 <= a <= b <= c, got " + triple(a, b, c));
  }
  const GridDims dims{a, b, c};
  const LowerBound lb = lower_bound(dims);
  const Status need = lb.integral() ? Status::Perfect : Status::Optimal;

  if (a >= 10) return generic(dims, need, "a >= 10: recursive split");

  if (a == 9) {
    if (b % 3 == 0 || c % 3 == 0) {
      return generic(dims, need, "a = 9, 3 divides b or c: perfect by recursive split");
    }
    int b1 = leave_three_no_multiple_of_three(b);
    const int c1 = leave_three_no_multiple_of_three(c);
    std::string rule = "a = 9";
    if (b - b1 == 3 && c1 == 2) {
      // (3,3,2) is not perfect; b = 10 is the only side that reaches it.
      b1 = b - 6;
      rule += ", b = 10, c ≡ 5 (mod 6)";
    }
    return split(dims, need, 6, b1, c1, rule);
  }

  const bool perfect_case =
      a == 8 ? mod(b - c, 3) == 0 && (mod(b, 3) == 0 || mod(b, 3) == 2)
             : mod(b - c, 3) == 0 && (mod(b, 3) == 0 || mod(b, 3) == 1);
  if (perfect_case) {
    return generic(dims, need,
                   "a = " + std::to_string(a) + ", perfect residues: recursive split");
  }
  const int a1 = a == 8 ? 5 : 4;
  int b1 = leave_three(b, 2);
  int c1 = leave_three(c, 2);
  std::string rule = "a = " + std::to_string(a);
  if (b - b1 == 3 && c1 == 2) {
    if (a == 7 && b == 7) {
      // (7,7,c), c ≡ 5 (mod 6)
      if (c == 11) return split(dims, need, 4, 4, 5, "(7,7,11)");
      return split(dims, need, 4, 4, 8, "(7,7,c), c >= 17");
    }
    b1 = b - 6;
    rule += ", b <= 10, c ≡ 5 (mod 6)";
  }
  return split(dims, need, a1, b1, c1, rule);
}

}  // namespace perc
