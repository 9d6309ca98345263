#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "steiner/bdd.hpp"
#include "steiner/execution.hpp"
#include "steiner/graph.hpp"
#include "steiner/steiner_tree.hpp"

namespace steiner {

using BigCount = boost::multiprecision::cpp_int;

// Deletes every node from which the 1-sink is unreachable (bottom-up: a node
// whose arcs both lead to the 0-sink or to deleted nodes is deleted) and
// redirects arcs into deleted nodes to the 0-sink. Surviving nodes keep their
// relative order and are renumbered densely.
Bdd reduce(const Bdd& bdd, Execution exec = Execution::kSerial);

// Number of root-to-1-sink paths.
BigCount count_trees(const Bdd& bdd, Execution exec = Execution::kSerial);

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
  std::size_t k = 1000;          // cheapest partial costs kept per node
  Cost theta = kInfiniteCost;
  std::size_t cap = 0;           // trees collected at the 1-sink; 0 means 10 * k
  std::size_t entry_budget = std::size_t{1} << 26;  // live or retained entries
  Execution exec = Execution::kSerial;
};

struct TraversalStats {
  std::size_t peak_live_entries = 0;  // cost entries held by internal nodes
  std::size_t arena_entries = 0;      // back-references kept for decoding
  std::size_t sink_arrivals = 0;      // entries reaching the 1-sink with cost <= theta
  bool truncated = false;             // more than cap trees within theta were seen
};

struct EnumerateResult {
  std::vector<SteinerTree> trees;  // ascending (cost, edges); edge ids of the BDD's graph
  TraversalStats stats;
};

// Cheapest cost from each node to the 1-sink, indexed by node id;
// kInfiniteCost where the 1-sink is unreachable.
std::vector<Cost> completion_costs(const Bdd& bdd);

// Level-synchronous traversal keeping the k cheapest partial costs per node.
// Entries whose cheapest completion exceeds theta are dropped on arrival.
// The k cheapest trees represented by the BDD with cost <= theta are always
// returned; further trees with cost <= theta may be returned as well, up to
// `cap` trees in total (the cheapest arrivals are kept). Equal-cost entries
// are ordered by (parent node, parent entry, arc bit).
//
// Throws EnumerationError when the live entries of two adjacent levels, or
// the back-references still needed for decoding, exceed `entry_budget`.
EnumerateResult enumerate(const Bdd& bdd, const Graph& g,
                          const EnumerateOptions& options);

}  // namespace steiner
