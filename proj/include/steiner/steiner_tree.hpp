#pragma once

#include <compare>
#include <span>
#include <vector>

#include "steiner/graph.hpp"

namespace steiner {

// Edge set (ascending edge ids, no duplicates) with its total cost.
struct SteinerTree {
  std::vector<EdgeId> edges;
  Cost cost = 0;

  // Ascending cost, then lexicographic edge list.
  friend auto operator<=>(const SteinerTree& a, const SteinerTree& b) {
    if (auto c = a.cost <=> b.cost; c != 0) return c;
    return a.edges <=> b.edges;
  }
  friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

// Sorts and deduplicates `edges` and sums their costs in `g`.
SteinerTree make_tree(const Graph& g, std::vector<EdgeId> edges);

// True iff the edges are acyclic, form one component containing every
// terminal, and every leaf of that component is a terminal. Edge ids must be
// valid in `g`.
bool validate_tree(const SteinerTree& tree, const Graph& g);

// Rewrites a tree on a simplified graph in terms of the input graph's edges.
// Throws GraphError on an edge id unknown to the map.
SteinerTree expand_tree(const SteinerTree& tree, const SimplificationMap& map);

// Rewrites a tree on an edge subgraph in terms of the parent graph's edges.
SteinerTree lift_tree(const SteinerTree& tree, std::span<const EdgeId> parent_edge);

}  // namespace steiner
