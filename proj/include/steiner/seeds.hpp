#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steiner/graph.hpp"
#include "steiner/steiner_tree.hpp"

namespace steiner {

struct SeedConfig {
  int num_seeds = 3;
  double perturb_fraction = 0.05;  // fraction of edges deleted per extra run
  std::uint64_t rng_seed = 1;
  std::optional<VertexId> root;    // default: min_degree_terminal
  int max_attempts_per_seed = 32;
};

struct SeedResult {
  EdgeSubgraph subgraph;            // union of the seed trees
  std::vector<SteinerTree> trees;   // edge ids of the input graph
  bool shortfall = false;           // fewer than num_seeds distinct trees
  int attempts = 0;
};

// Tree of shortest paths: union of the shortest paths from `root` to every
// other terminal, with non-terminal leaves pruned. Among equal-distance
// predecessors the smallest vertex id wins; among parallel edges the cheapest,
// then the smallest id.
SteinerTree tosp_tree(const Graph& g, VertexId root);

// First tree on `g`, later trees on copies of `g` with
// ceil(perturb_fraction * |E|) randomly deleted edges. A deletion sample that
// disconnects the terminals is redrawn. Duplicate trees are kept once.
SeedResult select_seeds(const Graph& g, const SeedConfig& cfg);

// Union subgraph for externally supplied trees (edge ids of `g`).
SeedResult seeds_from_trees(const Graph& g, std::vector<SteinerTree> trees);

}  // namespace steiner
