#include <benchmark/benchmark.h>

#include "entroscope/entropy.hpp"
#include "entroscope/harness.hpp"
#include "entroscope/mahler.hpp"
#include "entroscope/radicals.hpp"

using namespace entroscope;

static void BM_MahlerLehmer(benchmark::State& state) {
  const IntPoly lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(mahler(lehmer, 1e-12));
}
BENCHMARK(BM_MahlerLehmer);

static void BM_Factor(benchmark::State& state) {
  Rng rng(derive_seed(1, 0, static_cast<std::uint64_t>(state.range(0))));
  IntPoly f{1};
  for (int i = 0; i < 3; ++i) f *= random_poly(rng, 1, static_cast<int>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(factor(f));
  state.SetLabel("deg " + std::to_string(f.degree()));
}
BENCHMARK(BM_Factor)->Arg(2)->Arg(4)->Arg(6);

static void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(derive_seed(2, 0, n));
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.range(-20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16);

static void BM_QuasiPeriodicTower(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) m(i, j) = 1;
  FlowFG big(FgAbGroup(k), m);
  for (auto _ : state) benchmark::DoNotOptimize(tower(big, RadicalKind::Q, static_cast<unsigned>(k)));
}
BENCHMARK(BM_QuasiPeriodicTower)->Arg(3)->Arg(5)->Arg(8);

static void BM_BernoulliTrajectory(benchmark::State& state) {
  Flow b(CyclicFlow(Int(state.range(0)), IntPoly{}));
  for (auto _ : state) benchmark::DoNotOptimize(entropy(b, EntropyKind::Ent, Method::Trajectory));
}
BENCHMARK(BM_BernoulliTrajectory)->Arg(2)->Arg(7);
BENCHMARK_MAIN();
