#include <benchmark/benchmark.h>

#include "lab/constants.hpp"
#include "lab/decomp.hpp"
#include "lab/maximal.hpp"
#include "lab/weight.hpp"

using namespace lab;

static void BM_MaximalWindow(benchmark::State& state) {
  const GroupModel g = GroupModel::integer_window(static_cast<int>(state.range(0)));
  const GroupFunction f = random_function(g, 1);
  for (auto _ : state) {
    GroupFunction mf = maximal(g, f);
    benchmark::DoNotOptimize(mf.values().data());
  }
  state.SetComplexityN(g.size());
}
BENCHMARK(BM_MaximalWindow)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_MaximalPadic(benchmark::State& state) {
  const GroupModel g = GroupModel::padic(3, static_cast<int>(state.range(0)));
  const GroupFunction f = random_function(g, 1);
  for (auto _ : state) {
    GroupFunction mf = maximal(g, f);
    benchmark::DoNotOptimize(mf.values().data());
  }
}
BENCHMARK(BM_MaximalPadic)->DenseRange(2, 7);

static void BM_ApConstant(benchmark::State& state) {
  const GroupModel g = GroupModel::integer_window(static_cast<int>(state.range(0)));
  const Weight w = random_weight(g, {-3.0, 3.0}, 1);
  for (auto _ : state) {
    ConstantValue c = ap_constant(g, w, 2.0);
    benchmark::DoNotOptimize(c.value);
  }
}
BENCHMARK(BM_ApConstant)->RangeMultiplier(4)->Range(16, 1024);

static void BM_FujiiWilson(benchmark::State& state) {
  const GroupModel g = GroupModel::integer_window(static_cast<int>(state.range(0)));
  const Weight w = random_weight(g, {-3.0, 3.0}, 1);
  for (auto _ : state) {
    ConstantValue c = ainfty_fw(g, w);
    benchmark::DoNotOptimize(c.value);
  }
}
BENCHMARK(BM_FujiiWilson)->RangeMultiplier(2)->Range(8, 64);

static void BM_CzDecompose(benchmark::State& state) {
  const GroupModel g = GroupModel::integer_window(static_cast<int>(state.range(0)));
  const Weight w = random_weight(g, {-3.0, 3.0}, 1);
  const BaseSet u = g.base_set(0, g.index_max());
  const double lam = 1.5 * average(g, w.values(), hat(g, u));
  for (auto _ : state) {
    CZFamily fam = cz_decompose(g, u, w, lam);
    benchmark::DoNotOptimize(fam.items.data());
  }
}
BENCHMARK(BM_CzDecompose)->RangeMultiplier(2)->Range(8, 32);

BENCHMARK_MAIN();
