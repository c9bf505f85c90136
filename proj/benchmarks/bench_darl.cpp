#include <benchmark/benchmark.h>

#include "darl/ingest.hpp"
#include "darl/model.hpp"
#include "darl/prng.hpp"
#include "darl/stats.hpp"

namespace {

void BM_NextWord(benchmark::State& state) {
  auto gen = darl::prng::seed_generator(darl::prng::SeedValue{5});
  for (auto _ : state) benchmark::DoNotOptimize(darl::prng::next_word(gen));
}
BENCHMARK(BM_NextWord);

void BM_UniformSeries(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto s = darl::prng::uniform_series(darl::prng::SeedValue{17}, n, 25.81, 31.01,
                                        darl::prng::SortOrder::Descending);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(BM_UniformSeries)->Arg(540)->Arg(830)->Arg(5000);

void BM_ShapiroWilk(benchmark::State& state) {
  const auto s = darl::prng::uniform_series(darl::prng::SeedValue{3},
                                            static_cast<std::size_t>(state.range(0)), 25.81,
                                            31.01, darl::prng::SortOrder::Ascending);
  for (auto _ : state) benchmark::DoNotOptimize(darl::stats::shapiro_wilk(s.values));
}
BENCHMARK(BM_ShapiroWilk)->Arg(538)->Arg(5000);

void BM_RunConfiguration(benchmark::State& state) {
  const auto config =
      darl::ingest::builtin_fixture(state.range(0) == 0 ? "experiment-a" : "experiment-b").config;
  for (auto _ : state) {
    auto run = darl::model::run_configuration(config);
    benchmark::DoNotOptimize(run.records.data());
  }
}
BENCHMARK(BM_RunConfiguration)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
