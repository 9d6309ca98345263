#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "steiner/bdd.hpp"
#include "steiner/bdd_ops.hpp"
#include "steiner/execution.hpp"
#include "steiner/frontier.hpp"
#include "steiner/graph.hpp"
#include "steiner/seeds.hpp"
#include "steiner/steiner_tree.hpp"

namespace steiner {

struct RunConfig {
  // Exactly one of theta / theta_ratio is used; theta wins when both are set.
  // theta is in input units and is scaled like the edge weights.
  std::optional<double> theta;
  double theta_ratio = 1.2;  // times the cheapest seed tree cost
  std::size_t k = 1000;
  std::size_t cap = 0;  // 0: 10 * k
  bool use_seeds = true;
  bool use_simplify = true;
  SeedConfig seeds;
  std::vector<SteinerTree> external_seeds;  // replaces ToSP seeds when non-empty
  std::size_t node_cap = 100'000'000;
  std::size_t entry_budget = std::size_t{1} << 26;
  OrderPolicy order;
  Execution exec = Execution::kSerial;
};

struct PipelineReport {
  std::size_t vertices = 0, edges = 0, terminals = 0;
  std::size_t pre_vertices = 0, pre_edges = 0;
  std::size_t seed_trees = 0;
  bool seed_shortfall = false;
  Cost best_seed_cost = -1;
  Cost theta = kInfiniteCost;
  std::size_t frontier_width = 0;
  std::size_t bdd_nodes = 0, bdd_nodes_reduced = 0, max_layer_width = 0;
  double construct_ms = 0, reduce_ms = 0, traverse_ms = 0;
  std::size_t tree_count = 0;
  Cost min_cost = -1;
  double avg_cost = 0;
  std::int64_t cost_scale = 1;
  TraversalStats traversal;
};

// Graph after seed selection and simplification, with the maps needed to
// express its trees in the input graph's edge ids.
struct Preprocessed {
  EdgeSubgraph subgraph;   // seed union (or the whole input graph)
  Simplified simplified;   // simplification of subgraph.graph
  std::vector<SteinerTree> seeds;
  bool seed_shortfall = false;

  const Graph& graph() const { return simplified.graph; }
  SteinerTree to_input(const SteinerTree& t) const;
};

Preprocessed preprocess(const Graph& g, const RunConfig& cfg);

// Absolute threshold in scaled units.
Cost resolve_theta(const Graph& g, const RunConfig& cfg,
                   const std::vector<SteinerTree>& seeds);

struct PipelineResult {
  std::vector<SteinerTree> trees;  // input graph edge ids, ascending (cost, edges)
  PipelineReport report;
  std::optional<Bdd> bdd;  // reduced, over the preprocessed graph's edges
};

// parse -> seed-select -> simplify -> order -> construct -> reduce ->
// enumerate -> expand. Throws TerminalCountError, CapacityError and
// EnumerationError from the stages.
PipelineResult run_enumeration(const Graph& g, const RunConfig& cfg);

// {"cost":<int>,"edges":[[u,v],...]} per line, edges in ascending id order.
void write_trees_jsonl(std::ostream& out, const Graph& g,
                       const std::vector<SteinerTree>& trees);

// Reads trees in the format above. Each [u,v] pair resolves to the cheapest,
// then lowest-id, unused edge joining u and v.
std::vector<SteinerTree> read_trees_jsonl(std::istream& in, const Graph& g);

// Human-readable summary (one block) and the JSON report.
void write_summary(std::ostream& out, const PipelineReport& r);
void write_report_json(std::ostream& out, const PipelineReport& r);

}  // namespace steiner
