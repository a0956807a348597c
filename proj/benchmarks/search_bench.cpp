#include <benchmark/benchmark.h>

#include "perc/bounds.hpp"
#include "perc/search.hpp"

namespace {

using namespace perc;

void BM_Exhaustive(benchmark::State& state) {
  const GridDims dims = GridDims::make(2, 3, static_cast<int>(state.range(0)));
  ExhaustiveOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_exhaustive(dims, opts));
  }
}
BENCHMARK(BM_Exhaustive)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AnnealAtBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridDims dims = GridDims::make(4, n, n);
  const std::int64_t target = lower_bound(dims).ceil;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    AtBoundOptions opts;
    opts.rng_seed = seed++;
    benchmark::DoNotOptimize(find_at_bound(dims, target, opts));
  }
}
BENCHMARK(BM_AnnealAtBound)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
