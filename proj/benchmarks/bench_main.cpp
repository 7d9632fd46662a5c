#include <benchmark/benchmark.h>

#include "robba/frobcoh.hpp"
#include "robba/pi1.hpp"
#include "robba/random.hpp"

using namespace robba;

static void BM_SeriesMultiply(benchmark::State& state) {
  const int hi = static_cast<int>(state.range(0));
  auto rng = random::case_rng(1, 0);
  auto a = random::series(rng, 3, RingTag::Laurent, -4, hi, 9, 12);
  auto b = random::series(rng, 3, RingTag::Laurent, -4, hi, 9, 12);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply)->Arg(16)->Arg(64)->Arg(128);

static void BM_FrobeniusApply(benchmark::State& state) {
  auto rng = random::case_rng(2, 0);
  auto frob = random::frobenius(rng, 3, 80);
  auto f = random::series(rng, 3, RingTag::Laurent, -6, static_cast<int>(state.range(0)), 9, 12);
  for (auto _ : state) benchmark::DoNotOptimize(frob.apply(f));
}
BENCHMARK(BM_FrobeniusApply)->Arg(12)->Arg(24);

static void BM_CohomologyDagger(benchmark::State& state) {
  auto rng = random::case_rng(3, 0);
  auto m = random::dagger_module(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(m));
}
BENCHMARK(BM_CohomologyDagger)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_FreeNilpotent(benchmark::State& state) {
  auto rng = random::case_rng(4, 0);
  auto h1 = random::phin(rng, 3, static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(free_nilpotent(h1, 4));
}
BENCHMARK(BM_FreeNilpotent)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Verdict(benchmark::State& state) {
  auto rng = random::case_rng(5, 0);
  auto d = free_nilpotent(random::phin(rng, 3, 4, true), 4);
  for (auto _ : state) benchmark::DoNotOptimize(good_reduction_verdict(d));
}
BENCHMARK(BM_Verdict)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
