#include <benchmark/benchmark.h>

#include <random>

#include "treedet/det.hpp"
#include "treedet/matrix.hpp"
#include "treedet/sweep.hpp"

using namespace treedet;

namespace {

WeightedTree bench_tree(std::size_t n, std::uint64_t seed) {
  TreeGenSpec spec;
  spec.n = n;
  spec.weight_min = 1;
  spec.weight_max = 5;
  spec.seed = seed;
  return *TreeGenerator(spec).next();
}

std::vector<WeightedTree> sweep_trees(std::size_t count) {
  std::mt19937_64 rng(17);
  std::vector<WeightedTree> out;
  for (std::size_t i = 0; i < count; ++i) {
    TreeGenSpec spec;
    spec.n = 9;
    spec.weight_min = -5;
    spec.weight_max = 5;
    spec.seed = rng();
    out.push_back(with_random_leaf_endpoints(*TreeGenerator(spec).next(), rng));
  }
  return out;
}

template <Engine E>
void BM_Bordered(benchmark::State& state) {
  const auto m = bordered_matrix(bench_tree(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m, E).value);
}

template <Engine E>
void BM_ShiftedExpT(benchmark::State& state) {
  const auto m = exp_matrix(bench_tree(static_cast<std::size_t>(state.range(0)), 2), Layout::shifted, true);
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m, E).value);
}

void BM_SweepSerial(benchmark::State& state) {
  const auto trees = sweep_trees(200);
  for (auto _ : state) benchmark::DoNotOptimize(verify_batch_serial(IdentityId::new_qt, trees, {}));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto trees = sweep_trees(200);
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_batch(IdentityId::new_qt, trees, {}, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_Bordered<Engine::naive>)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Bordered<Engine::bareiss>)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Bordered<Engine::berkowitz>)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ShiftedExpT<Engine::bareiss>)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ShiftedExpT<Engine::berkowitz>)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
