#include <benchmark/benchmark.h>

#include "permint/extremal.hpp"
#include "permint/rng.hpp"
#include "permint/spectral.hpp"
#include "permint/spread.hpp"

namespace {

using namespace permint;

void BM_IntersectionSize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(1, 0);
  const auto a = Permutation::from_rank(n, rng.next_below(factorial_u64(n)));
  const auto b = Permutation::from_rank(n, rng.next_below(factorial_u64(n)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(intersection_size(a, b));
  }
}
BENCHMARK(BM_IntersectionSize)->Arg(6)->Arg(8);

void BM_RankUnrank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t r = 0;
  const std::uint64_t size = factorial_u64(n);
  for (auto _ : state) {
    const auto p = Permutation::from_rank(n, r);
    benchmark::DoNotOptimize(p.rank());
    r = (r + 12345) % size;
  }
}
BENCHMARK(BM_RankUnrank)->Arg(6)->Arg(8);

void BM_BestResponse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto u = umvirate(n, {1, 2}, {1, 2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(u, 2).size());
  }
}
BENCHMARK(BM_BestResponse)->Arg(4)->Arg(5);

void BM_ExactMaxProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_max_product(n, 2).product);
  }
}
BENCHMARK(BM_ExactMaxProduct)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BranchBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bb_max_product(n, 2, 1000000).product);
  }
}
BENCHMARK(BM_BranchBound)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = SnFunction::indicator(umvirate(n, {1}, {1}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(f).weights.size());
  }
}
BENCHMARK(BM_Decompose)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Spreadness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cube = embed(PermFamily::full(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spreadness(cube, 3).r);
  }
}
BENCHMARK(BM_Spreadness)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CoverageSample(benchmark::State& state) {
  const auto cube = embed(PermFamily::full(4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage_mc(cube, 2, 0.25, 1000, 7).hits);
  }
}
BENCHMARK(BM_CoverageSample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
