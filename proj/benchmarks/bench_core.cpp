#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "fuglede/constructors.hpp"
#include "fuglede/fourier.hpp"
#include "fuglede/group.hpp"
#include "fuglede/search.hpp"

using namespace fuglede;

namespace {

SubsetMask sample_set(const Group& g, std::uint64_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SubsetMask a(g);
  while (a.size() < size) a.insert_index(rng() % g.order());
  return a;
}

SubsetMask x_axis(const Group& g) {
  SubsetMask a(g);
  for (std::uint64_t x = 0; x < g.q1(); ++x) a.insert(g.element(x, 0));
  return a;
}

void BM_IsZero(benchmark::State& state) {
  Group g(3, 2, 1);
  SubsetMask a = sample_set(g, 9, 7);
  std::vector<Elem> dirs;
  for (std::uint64_t i = 0; i < g.order(); ++i) dirs.push_back(g.element_at(i));
  std::size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_zero(a, dirs[at]));
    at = (at + 1) % dirs.size();
  }
}
BENCHMARK(BM_IsZero);

void BM_ZeroSet(benchmark::State& state) {
  Group g(3, 2, 1);
  SubsetMask a = sample_set(g, static_cast<std::uint64_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zero_set(a));
  }
}
BENCHMARK(BM_ZeroSet)->Arg(3)->Arg(9)->Arg(18);

void BM_DecideLine(benchmark::State& state) {
  Group g(3, 2, 1);
  SubsetMask a(g);
  for (std::uint64_t x = 0; x < 3; ++x) a.insert(g.element(3 * x, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide(a));
  }
}
BENCHMARK(BM_DecideLine);

void BM_DecideBlock(benchmark::State& state) {
  Group g(3, 2, 1);
  SubsetMask a = x_axis(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide(a));
  }
}
BENCHMARK(BM_DecideBlock);

void BM_BruteComplement(benchmark::State& state) {
  Group g(3, 2, 1);
  SubsetMask a = x_axis(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_complement(a));
  }
}
BENCHMARK(BM_BruteComplement);

void BM_CanonicalClasses(benchmark::State& state) {
  Group g(3, 2, 1);
  for (auto _ : state) {
    std::uint64_t classes = 0;
    enumerate_subsets(g, 3, true, 0, subset_count(g, 3),
                      [&](const SubsetMask&) {
                        ++classes;
                        return true;
                      });
    benchmark::DoNotOptimize(classes);
  }
}
BENCHMARK(BM_CanonicalClasses);

void BM_SweepOrderEight(benchmark::State& state) {
  Group g(2, 2, 1);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s <= g.order(); ++s) sizes.push_back(s);
  SearchBudget budget;
  budget.worker_count = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_conjecture(g, sizes, false, budget));
  }
}
BENCHMARK(BM_SweepOrderEight)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
