// Serial reference kernels against their OpenMP counterparts.
//
//   bench_kernels --benchmark_filter=Verify

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <tuple>

#include "spreadlab/construct.hpp"
#include "spreadlab/partition.hpp"
#include "spreadlab/search.hpp"

using namespace spreadlab;

namespace {

const construct::PartialSpread& spread(std::uint64_t q, unsigned n, unsigned t) {
  static std::map<std::tuple<std::uint64_t, unsigned, unsigned>, construct::PartialSpread> cache;
  const auto key = std::tuple{q, n, t};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, construct::build_lower_bound_spread(bounds::SpreadParams::make(q, n, t))).first;
  return it->second;
}

// Args: q, n, t
void spread_args(benchmark::internal::Benchmark* b) {
  b->Args({2, 10, 3})->Args({2, 12, 4})->Args({3, 8, 3})->Unit(benchmark::kMillisecond);
}

void BM_VerifySerial(benchmark::State& state) {
  const auto& s = spread(state.range(0), state.range(1), state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(construct::verify_partial_spread_serial(s));
  state.counters["members"] = static_cast<double>(s.size());
}
BENCHMARK(BM_VerifySerial)->Apply(spread_args);

void BM_VerifyParallel(benchmark::State& state) {
  const auto& s = spread(state.range(0), state.range(1), state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(construct::verify_partial_spread_parallel(s));
  state.counters["members"] = static_cast<double>(s.size());
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_VerifyParallel)->Apply(spread_args);

void profile_args(benchmark::internal::Benchmark* b) {
  b->Args({2, 8, 3})->Args({2, 10, 4})->Args({3, 6, 2})->Unit(benchmark::kMillisecond);
}

void BM_ProfileSerial(benchmark::State& state) {
  const auto p = partition::partition_from_spread(spread(state.range(0), state.range(1), state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(partition::hyperplane_profile_serial(p));
}
BENCHMARK(BM_ProfileSerial)->Apply(profile_args);

void BM_ProfileParallel(benchmark::State& state) {
  const auto p = partition::partition_from_spread(spread(state.range(0), state.range(1), state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(partition::hyperplane_profile_parallel(p));
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_ProfileParallel)->Apply(profile_args);

void search_args(benchmark::internal::Benchmark* b) {
  b->Args({2, 5, 2})->Args({2, 6, 3})->Args({3, 4, 2})->Unit(benchmark::kMillisecond);
}

search::SearchOptions bench_options(int threads) {
  search::SearchOptions o;
  o.time_budget = 0;
  o.threads = threads;
  return o;
}

void BM_SearchSerial(benchmark::State& state) {
  const auto p = bounds::SpreadParams::make(state.range(0), state.range(1), state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(search::max_partial_spread_serial(p, bench_options(1)).best_size);
}
BENCHMARK(BM_SearchSerial)->Apply(search_args);

void BM_SearchParallel(benchmark::State& state) {
  const auto p = bounds::SpreadParams::make(state.range(0), state.range(1), state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(search::max_partial_spread(p, bench_options(0)).best_size);
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_SearchParallel)->Apply(search_args);

}  // namespace

BENCHMARK_MAIN();
