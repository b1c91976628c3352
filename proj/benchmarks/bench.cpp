#include <benchmark/benchmark.h>

#include "dmcong/congruence.hpp"
#include "dmcong/descriptor.hpp"
#include "dmcong/monoid.hpp"
#include "dmcong/partition.hpp"
#include "dmcong/random.hpp"

using namespace dmcong;

namespace {

  void bm_compose(benchmark::State& state) {
    auto const n = static_cast<std::uint32_t>(state.range(0));
    Rng        rng(7);
    std::vector<Partition> xs;
    for (int i = 0; i < 64; ++i) {
      xs.push_back(random_element(Family::P, n, rng));
    }
    std::size_t i = 0;
    for (auto _ : state) {
      benchmark::DoNotOptimize(compose(xs[i % 64], xs[(i * 7 + 3) % 64]));
      ++i;
    }
  }
  BENCHMARK(bm_compose)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

  void bm_enumerate(benchmark::State& state) {
    auto const n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(enumerate({Family::P, n}).size());
    }
  }
  BENCHMARK(bm_enumerate)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

  void bm_table(benchmark::State& state) {
    auto const n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
      state.PauseTiming();
      auto m = enumerate({Family::PB, n});
      state.ResumeTiming();
      build_table(m, {}, 1);
    }
  }
  BENCHMARK(bm_table)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

  void bm_principal_congruences(benchmark::State& state) {
    auto const n = static_cast<std::uint32_t>(state.range(0));
    auto       m = enumerate({Family::T, n});
    build_table(m, {}, 1);
    for (auto _ : state) {
      benchmark::DoNotOptimize(principal_congruences(m, {}, 1).size());
    }
  }
  BENCHMARK(bm_principal_congruences)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

  void bm_descriptors(benchmark::State& state) {
    CardinalContext const ctx(Cardinal::aleph(static_cast<std::uint32_t>(state.range(0))));
    for (auto _ : state) {
      benchmark::DoNotOptimize(enumerate_all(ctx, Flavor::partition_like).size());
    }
  }
  BENCHMARK(bm_descriptors)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
