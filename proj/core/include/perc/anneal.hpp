#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace perc {

struct AnnealParams {
  double t_start = 2.0;
  double t_end = 0.05;
  double cooling = 0.99999;  // geometric, per move
  std::uint64_t trial_moves = 2'000'000;
  // A trial restarts from a fresh random state once its best cost has not
  // improved for this many moves.
  std::uint64_t stagnation_moves = 1'000'000;
};

// Choose exactly `count` elements of [0, universe).
struct SubsetGroup {
  std::uint32_t universe = 0;
  std::uint32_t count = 0;
};

using Selection = std::vector<std::vector<std::uint32_t>>;
using CostFn = std::function<std::int64_t(const Selection&)>;
// Builds the cost function for one trial. Called once per trial, on the
// thread that runs it, so the returned closure may own scratch state.
using CostFactory = std::function<CostFn(std::uint64_t trial)>;

struct AnnealOutcome {
  bool success = false;  // some trial reached cost 0
  std::int64_t best_cost = 0;
  Selection best;
  std::uint64_t best_trial = 0;
  std::uint64_t moves = 0;   // over trials up to and including best_trial
  std::uint64_t trials = 0;  // trials up to and including best_trial
};

// Simulated annealing over fixed-size subsets, moves relocate one chosen
// element within its group. Trial i draws from its own stream seeded by
// (rng_seed, i); the lowest successful trial wins, so the outcome does not
// depend on `threads`.
AnnealOutcome anneal_subsets(std::span<const SubsetGroup> groups,
                             const CostFactory& make_cost,
                             const AnnealParams& params, std::uint64_t rng_seed,
                             std::uint64_t budget, unsigned threads = 1);

}  // namespace perc
