#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "steiner/bdd_ops.hpp"
#include "steiner/frontier.hpp"
#include "steiner/oracle.hpp"
#include "support/random_graphs.hpp"

namespace steiner {
namespace {

using testing::costs;
using testing::edge_sets;

Bdd build(const Graph& g, Cost theta = kInfiniteCost) {
  return construct(g, order_edges(g), theta);
}

std::string dump(const Bdd& bdd) {
  std::ostringstream out;
  dump_bdd(out, bdd);
  return out.str();
}

void expect_reduced(const Bdd& bdd) {
  std::vector<bool> reaches_one(bdd.nodes().size(), false);
  reaches_one[kOneSink] = true;
  for (NodeId id = static_cast<NodeId>(bdd.nodes().size()); id-- > 2;) {
    const BddNode& n = bdd.node(id);
    EXPECT_FALSE(n.lo == kZeroSink && n.hi == kZeroSink) << "node " << id;
    reaches_one[id] = reaches_one[n.lo] || reaches_one[n.hi];
    EXPECT_TRUE(reaches_one[id]) << "node " << id;
  }
}

TEST(Reduce, TriangleKeepsBothTrees) {
  Bdd reduced = reduce(build(testing::triangle()));
  EXPECT_EQ(count_trees(reduced), 2);
  expect_reduced(reduced);
}

TEST(Reduce, RemovesDeadSubtrees) {
  Graph g = testing::triangle();
  Bdd bdd = build(g, 2);
  Bdd reduced = reduce(bdd);
  EXPECT_LT(reduced.node_count(), bdd.node_count());
  EXPECT_EQ(count_trees(reduced), count_trees(bdd));
  expect_reduced(reduced);
}

TEST(Reduce, Idempotent) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 50; ++i) {
    Graph g = testing::random_connected_graph(rng);
    Bdd once = reduce(build(g, 20));
    EXPECT_EQ(dump(reduce(once)), dump(once));
  }
}

TEST(Reduce, EmptyWhenNoTreeFits) {
  Bdd reduced = reduce(build(testing::triangle(), 1));
  EXPECT_TRUE(reduced.empty());
  EXPECT_EQ(reduced.node_count(), 0u);
  EXPECT_EQ(count_trees(reduced), 0);
  EXPECT_TRUE(enumerate(reduced, testing::triangle(), {}).trees.empty());
}

TEST(Reduce, PreservesCountAndShape) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::random_connected_graph(rng);
    for (Cost theta : {Cost{15}, kInfiniteCost}) {
      Bdd bdd = build(g, theta);
      Bdd reduced = reduce(bdd);
      EXPECT_EQ(count_trees(reduced), count_trees(bdd));
      EXPECT_LE(reduced.node_count(), bdd.node_count());
      expect_reduced(reduced);
    }
  }
}

TEST(Reduce, ParallelMatchesSerial) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    Graph g = testing::random_connected_graph(rng);
    Bdd bdd = build(g, 25);
    EXPECT_EQ(dump(reduce(bdd, Execution::kParallel)), dump(reduce(bdd, Execution::kSerial)));
  }
}

TEST(CountTrees, Triangle) {
  EXPECT_EQ(count_trees(build(testing::triangle())), 2);
  EXPECT_EQ(count_trees(build(testing::triangle(true))), 3);
}

TEST(CountTrees, TwoTerminalsCountSimplePaths) {
  std::mt19937_64 rng(54);
  testing::RandomGraphSpec spec;
  spec.max_terminals = 2;
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::random_connected_graph(rng, spec);
    auto t = g.terminals();
    EXPECT_EQ(count_trees(reduce(build(g))), BigCount(count_simple_paths(g, t[0], t[1])));
  }
}

TEST(CountTrees, LargeGridExceedsMachineWords) {
  Graph g = testing::grid_graph(8, 8);
  BigCount serial = count_trees(reduce(build(g)));
  EXPECT_GT(serial, BigCount(1'000'000));
  EXPECT_EQ(count_trees(reduce(build(g)), Execution::kParallel), serial);
}

TEST(Enumerate, TriangleAllTrees) {
  Graph g = testing::triangle();
  EnumerateOptions options;
  options.k = 10;
  auto trees = enumerate(reduce(build(g)), g, options).trees;
  ASSERT_EQ(trees.size(), 2u);
  EXPECT_EQ(trees[0], (SteinerTree{{0, 1}, 2}));
  EXPECT_EQ(trees[1], (SteinerTree{{2}, 3}));
}

TEST(Enumerate, TriangleTopOne) {
  Graph g = testing::triangle();
  EnumerateOptions options;
  options.k = 1;
  auto trees = enumerate(reduce(build(g)), g, options).trees;
  ASSERT_FALSE(trees.empty());
  EXPECT_EQ(trees[0], (SteinerTree{{0, 1}, 2}));
}

TEST(Enumerate, ThetaBelowOptimumIsEmpty) {
  Graph g = testing::triangle();
  EnumerateOptions options;
  options.theta = 1;
  EXPECT_TRUE(enumerate(reduce(build(g)), g, options).trees.empty());
}

// A merged node's cost can underestimate a path; the traversal still drops
// trees above theta.
TEST(Enumerate, FiltersTreesAboveTheta) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::random_connected_graph(rng);
    const Cost theta = 12;
    EnumerateOptions options;
    options.k = 1 << 20;
    options.theta = theta;
    options.cap = std::size_t{1} << 40;
    auto trees = enumerate(reduce(build(g, theta)), g, options).trees;
    for (const SteinerTree& t : trees) {
      EXPECT_LE(t.cost, theta);
      EXPECT_TRUE(validate_tree(t, g));
    }
    EXPECT_EQ(trees, brute_force_minimal_steiner(g, theta).trees);
  }
}

TEST(Enumerate, TopKMatchesOracle) {
  std::mt19937_64 rng(56);
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::random_connected_graph(rng);
    auto oracle = costs(brute_force_minimal_steiner(g, kInfiniteCost).trees);
    Bdd bdd = reduce(build(g));
    for (std::size_t k : {1, 2, 3, 5}) {
      EnumerateOptions options;
      options.k = k;
      auto trees = enumerate(bdd, g, options).trees;
      ASSERT_GE(trees.size(), std::min(k, oracle.size()));
      EXPECT_EQ(edge_sets(trees).size(), trees.size());
      auto got = costs(trees);
      const std::size_t n = std::min(k, oracle.size());
      EXPECT_EQ(std::vector<Cost>(got.begin(), got.begin() + n),
                std::vector<Cost>(oracle.begin(), oracle.begin() + n));
    }
  }
}

TEST(Enumerate, PeakEntriesBounded) {
  std::mt19937_64 rng(57);
  for (int i = 0; i < 50; ++i) {
    Graph g = testing::random_connected_graph(rng);
    Bdd bdd = reduce(build(g));
    for (std::size_t k : {1, 4, 1000}) {
      EnumerateOptions options;
      options.k = k;
      auto result = enumerate(bdd, g, options);
      EXPECT_LE(result.stats.peak_live_entries, 2 * k * bdd.max_layer_width());
    }
  }
}

TEST(Enumerate, CapTruncates) {
  Graph g = testing::grid_graph(3, 3);
  Bdd bdd = reduce(build(g));
  EnumerateOptions options;
  options.k = 3;
  options.cap = 3;
  auto result = enumerate(bdd, g, options);
  EXPECT_EQ(result.trees.size(), 3u);
  EXPECT_TRUE(result.stats.truncated);
  options.cap = 1000;
  auto full = enumerate(bdd, g, options);
  EXPECT_FALSE(full.stats.truncated);
  auto full_costs = costs(full.trees);
  EXPECT_EQ(std::vector<Cost>(full_costs.begin(), full_costs.begin() + 3), costs(result.trees));
}

TEST(Enumerate, EntryBudget) {
  Graph g = testing::grid_graph(4, 4);
  EnumerateOptions options;
  options.k = 1000;
  options.entry_budget = 10;
  EXPECT_THROW(enumerate(reduce(build(g)), g, options), EnumerationError);
}

TEST(Enumerate, SmallBudgetCompactsWithoutChangingOutput) {
  Graph g = testing::grid_graph(5, 5);
  Bdd bdd = reduce(build(g));
  EnumerateOptions options;
  options.k = 20;
  auto roomy = enumerate(bdd, g, options);
  options.entry_budget = 10000;
  auto tight = enumerate(bdd, g, options);
  EXPECT_EQ(tight.trees, roomy.trees);
  EXPECT_LT(tight.stats.arena_entries, roomy.stats.arena_entries);
  EXPECT_LE(tight.stats.arena_entries, 10000u);
}

TEST(Enumerate, CompletionCosts) {
  Graph g = testing::triangle();
  Bdd bdd = reduce(build(g));
  std::vector<Cost> best = completion_costs(bdd);
  EXPECT_EQ(best[bdd.root()], 2);
  EXPECT_EQ(best[kOneSink], 0);
  EXPECT_EQ(best[kZeroSink], kInfiniteCost);
}

TEST(Enumerate, ParallelMatchesSerial) {
  std::mt19937_64 rng(58);
  for (int i = 0; i < 30; ++i) {
    Graph g = testing::random_connected_graph(rng);
    Bdd bdd = reduce(build(g));
    for (std::size_t k : {1, 3, 100}) {
      EnumerateOptions options;
      options.k = k;
      auto serial = enumerate(bdd, g, options);
      options.exec = Execution::kParallel;
      auto parallel = enumerate(bdd, g, options);
      EXPECT_EQ(serial.trees, parallel.trees);
      EXPECT_EQ(serial.stats.peak_live_entries, parallel.stats.peak_live_entries);
    }
  }
  Graph grid = testing::grid_graph(5, 5);
  Bdd bdd = reduce(build(grid));
  EnumerateOptions options;
  options.k = 50;
  auto serial = enumerate(bdd, grid, options);
  options.exec = Execution::kParallel;
  EXPECT_EQ(enumerate(bdd, grid, options).trees, serial.trees);
}

TEST(DumpBdd, TriangleFormat) {
  std::string text = dump(reduce(build(testing::triangle())));
  EXPECT_EQ(text.substr(0, text.find('\n')), "bdd 4 3");
  EXPECT_EQ(text,
            "bdd 4 3\n"
            "2 1 3 4\n"
            "3 2 0 1\n"
            "4 2 5 0\n"
            "5 3 0 1\n");
}

}  // namespace
}  // namespace steiner
