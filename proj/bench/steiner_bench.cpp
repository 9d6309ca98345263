// Serial vs OpenMP kernels. Run with --benchmark_filter=<name> to pick one.

#include <benchmark/benchmark.h>

#include <random>

#include "steiner/bdd_ops.hpp"
#include "steiner/frontier.hpp"
#include "steiner/oracle.hpp"

namespace {

using namespace steiner;

Graph grid(VertexId rows, VertexId cols, std::vector<VertexId> terminals) {
  std::mt19937_64 rng(rows * 100 + cols);
  std::uniform_int_distribution<Cost> weight(1, 9);
  auto id = [cols](VertexId r, VertexId c) { return r * cols + c + 1; };
  std::vector<Edge> edges;
  for (VertexId r = 0; r < rows; ++r) {
    for (VertexId c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), weight(rng)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), weight(rng)});
    }
  }
  return Graph(rows * cols, std::move(edges), std::move(terminals));
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

void BM_Oracle(benchmark::State& state) {
  Graph g = grid(3, 5, {1, 5, 11, 15});  // 22 edges
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_minimal_steiner(g, kInfiniteCost, exec_of(state)));
  }
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

const Bdd& grid_bdd() {
  static const Graph g = grid(7, 7, {1, 7, 25, 43, 49});
  static const Bdd bdd = construct(g, order_edges(g), kInfiniteCost);
  return bdd;
}

void BM_Reduce(benchmark::State& state) {
  const Bdd& bdd = grid_bdd();
  for (auto _ : state) benchmark::DoNotOptimize(reduce(bdd, exec_of(state)));
  state.counters["nodes"] = static_cast<double>(bdd.node_count());
}
BENCHMARK(BM_Reduce)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_CountTrees(benchmark::State& state) {
  static const Bdd reduced = reduce(grid_bdd());
  for (auto _ : state) benchmark::DoNotOptimize(count_trees(reduced, exec_of(state)));
}
BENCHMARK(BM_CountTrees)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  static const Graph g = grid(6, 6, {1, 6, 31, 36});
  static const Bdd bdd = reduce(construct(g, order_edges(g), kInfiniteCost));
  EnumerateOptions options;
  options.k = static_cast<std::size_t>(state.range(1));
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(bdd, g, options));
  state.counters["max_layer_width"] = static_cast<double>(bdd.max_layer_width());
}
BENCHMARK(BM_Enumerate)
    ->ArgsProduct({{0, 1}, {100, 1000, 10000}})
    ->ArgNames({"parallel", "k"})
    ->Unit(benchmark::kMillisecond);

void BM_Construct(benchmark::State& state) {
  Graph g = grid(2, static_cast<VertexId>(state.range(0)), {1, 2 * static_cast<VertexId>(state.range(0))});
  EdgeOrder order = order_edges(g);
  for (auto _ : state) benchmark::DoNotOptimize(construct(g, order, kInfiniteCost));
}
BENCHMARK(BM_Construct)->Arg(10)->Arg(20)->Arg(40)->ArgName("cols");

}  // namespace

BENCHMARK_MAIN();
