// Serial reference kernels against their OpenMP versions on one inert and
// one split prime per size.

#include <benchmark/benchmark.h>

#include "weil/harness.hpp"
#include "weil/kernels.hpp"

#include <map>
#include <memory>

namespace {

using namespace weil;

const CatMap kCat{2, 1, 1, 1};

struct Fixture {
  WeilSystem system;
  HeckeTorus torus;
  Realization realization;
  std::vector<Matrix> ops;

  explicit Fixture(std::int64_t p)
      : system(p), torus(kCat, p), realization(defining_realization(p)),
        ops(kernels::torus_operators_serial(system, torus, realization)) {}
};

const Fixture& fixture(std::int64_t p) {
  static std::map<std::int64_t, std::unique_ptr<Fixture>> cache;
  auto& f = cache[p];
  if (!f) f = std::make_unique<Fixture>(p);
  return *f;
}

void BM_TorusOperatorsSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::torus_operators_serial(f.system, f.torus, f.realization));
}

void BM_TorusOperatorsParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::torus_operators(f.system, f.torus, f.realization));
}

void BM_ProjectorsSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::character_projectors_serial(f.ops));
}

void BM_ProjectorsParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::character_projectors(f.ops));
}

void BM_ColumnSupsSerial(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::column_sups_serial(f.ops.back()));
}

void BM_ColumnSupsParallel(benchmark::State& state) {
  const auto& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::column_sups(f.ops.back()));
}

// 23, 43 inert; 29, 41 split for the default cat map.
#define WEIL_PRIMES ->Arg(23)->Arg(29)->Arg(41)->Arg(43)->Unit(benchmark::kMillisecond)
BENCHMARK(BM_TorusOperatorsSerial) WEIL_PRIMES;
BENCHMARK(BM_TorusOperatorsParallel) WEIL_PRIMES;
BENCHMARK(BM_ProjectorsSerial) WEIL_PRIMES;
BENCHMARK(BM_ProjectorsParallel) WEIL_PRIMES;
BENCHMARK(BM_ColumnSupsSerial) WEIL_PRIMES;
BENCHMARK(BM_ColumnSupsParallel) WEIL_PRIMES;

}  // namespace

BENCHMARK_MAIN();
