#include <benchmark/benchmark.h>

#include "ktgraph/changepoint.hpp"
#include "ktgraph/graph_statistics.hpp"
#include "ktgraph/spectral_core.hpp"
#include "ktgraph/three_block_test.hpp"

using namespace ktg;

namespace {

EdgeProbabilityMatrix two_block(std::size_t n) {
  BlockModel m;
  m.B = Eigen::Matrix2d{{0.6, 0.3}, {0.3, 0.6}};
  m.block_sizes = {n / 2, n - n / 2};
  return sbm_probability_matrix(m);
}

void BM_SampleAdjacency(benchmark::State& state) {
  const EdgeProbabilityMatrix P = two_block(static_cast<std::size_t>(state.range(0)));
  RandomStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_adjacency(P, rng));
}
BENCHMARK(BM_SampleAdjacency)->Arg(250)->Arg(1000);

void BM_SymmetricEigenvalues(benchmark::State& state) {
  const EdgeProbabilityMatrix P = two_block(static_cast<std::size_t>(state.range(0)));
  RandomStream rng(2);
  const AdjacencyMatrix A = sample_adjacency(P, rng);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigenvalues(A.matrix()));
}
BENCHMARK(BM_SymmetricEigenvalues)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TriangleCount(benchmark::State& state) {
  RandomStream rng(3);
  const AdjacencyMatrix A = sample_adjacency(erdos_renyi_probability_matrix(static_cast<std::size_t>(state.range(0)), 0.2, false), rng);
  for (auto _ : state) benchmark::DoNotOptimize(triangle_count(A));
}
BENCHMARK(BM_TriangleCount)->Arg(400)->Arg(2000);

void BM_ModifiedScan(benchmark::State& state) {
  RandomStream rng(4);
  const AdjacencyMatrix A = sample_adjacency(erdos_renyi_probability_matrix(24, 0.3, false), rng);
  for (auto _ : state) benchmark::DoNotOptimize(modified_scan(A, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ModifiedScan)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Table1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(table1());
}
BENCHMARK(BM_Table1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
