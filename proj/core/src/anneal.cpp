#include "perc/anneal.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "perc/error.hpp"

namespace perc {
namespace {

struct TrialResult {
  bool done = false;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  Selection best;
  std::uint64_t moves = 0;
};

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Selection random_selection(std::span<const SubsetGroup> groups,
                           std::mt19937_64& rng,
                           std::vector<std::vector<char>>& chosen) {
  Selection sel(groups.size());
  chosen.assign(groups.size(), {});
  for (std::size_t g = 0; g < groups.size(); ++g) {
    chosen[g].assign(groups[g].universe, 0);
    // Partial Fisher-Yates.
    std::vector<std::uint32_t> pool(groups[g].universe);
    for (std::uint32_t i = 0; i < groups[g].universe; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < groups[g].count; ++i) {
      const std::uint64_t j = i + rng() % (groups[g].universe - i);
      std::swap(pool[i], pool[j]);
      sel[g].push_back(pool[i]);
      chosen[g][pool[i]] = 1;
    }
  }
  return sel;
}

TrialResult run_trial(std::span<const SubsetGroup> groups, const CostFn& cost,
                      const AnnealParams& params, std::uint64_t rng_seed,
                      std::uint64_t trial, std::uint64_t moves_allowed,
                      const std::atomic<std::uint64_t>& winner) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed),
                    static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::vector<char>> chosen;
  Selection current = random_selection(groups, rng, chosen);

  // Groups that admit a relocation move, weighted by their counts.
  std::vector<std::size_t> movable;
  std::uint64_t weight = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].count > 0 && groups[g].count < groups[g].universe) {
      movable.push_back(g);
      weight += groups[g].count;
    }
  }

  TrialResult result;
  std::int64_t f = cost(current);
  result.best_cost = f;
  result.best = current;
  if (f == 0 || movable.empty()) {
    result.done = true;
    return result;
  }
  double temperature = params.t_start;
  std::uint64_t last_improvement = 0;
  std::uint64_t move = 0;
  while (move < moves_allowed) {
    if ((move & 4095) == 0 && winner.load(std::memory_order_relaxed) < trial) {
      return result;  // cancelled: a lower trial already succeeded
    }
    ++move;
    std::uint64_t pick = rng() % weight;
    std::size_t g = movable.front();
    for (std::size_t m : movable) {
      if (pick < groups[m].count) {
        g = m;
        break;
      }
      pick -= groups[m].count;
    }
    const std::size_t slot = rng() % groups[g].count;
    std::uint32_t candidate = 0;
    do {
      candidate = static_cast<std::uint32_t>(rng() % groups[g].universe);
    } while (chosen[g][candidate]);
    const std::uint32_t old = current[g][slot];
    current[g][slot] = candidate;
    const std::int64_t next = cost(current);
    const std::int64_t delta = next - f;
    if (delta <= 0 ||
        unit(rng) < std::exp(-static_cast<double>(delta) / temperature)) {
      chosen[g][old] = 0;
      chosen[g][candidate] = 1;
      f = next;
      if (f < result.best_cost) {
        result.best_cost = f;
        result.best = current;
        last_improvement = move;
        if (f == 0) break;
      }
    } else {
      current[g][slot] = old;
    }
    temperature = std::max(params.t_end, temperature * params.cooling);
    if (move - last_improvement > params.stagnation_moves) break;
  }
  result.moves = move;
  result.done = true;
  return result;
}

}  // namespace

AnnealOutcome anneal_subsets(std::span<const SubsetGroup> groups,
                             const CostFactory& make_cost,
                             const AnnealParams& params, std::uint64_t rng_seed,
                             std::uint64_t budget, unsigned threads) {
  for (const SubsetGroup& g : groups) {
    if (g.count > g.universe) {
      throw InputError("cannot choose " + std::to_string(g.count) + " of " +
                       std::to_string(g.universe) + " elements");
    }
  }
  if (params.trial_moves == 0) throw InputError("trial_moves must be positive");
  const std::uint64_t trials =
      std::max<std::uint64_t>(1, (budget + params.trial_moves - 1) / params.trial_moves);
  const std::uint64_t none = std::numeric_limits<std::uint64_t>::max();

  std::vector<TrialResult> results(trials);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> winner{none};

  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= trials || i > winner.load()) return;
      const std::uint64_t allowed =
          i + 1 < trials ? params.trial_moves : budget - i * params.trial_moves;
      const CostFn cost = make_cost(i);
      results[i] = run_trial(groups, cost, params, rng_seed, i,
                             std::max<std::uint64_t>(allowed, 1), winner);
      if (results[i].done && results[i].best_cost == 0) {
        std::uint64_t w = winner.load();
        while (i < w && !winner.compare_exchange_weak(w, i)) {
        }
      }
    }
  };
  const unsigned n = std::max(1u, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  AnnealOutcome out;
  const std::uint64_t w = winner.load();
  const std::uint64_t last = w == none ? trials - 1 : w;
  out.success = w != none;
  out.best_cost = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t i = 0; i <= last; ++i) {
    out.moves += results[i].moves;
    if (results[i].best_cost < out.best_cost) {
      out.best_cost = results[i].best_cost;
      out.best = results[i].best;
      out.best_trial = i;
    }
  }
  out.trials = last + 1;
  return out;
}

}  // namespace perc
