#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "steiner/graph.hpp"
#include "steiner/node_info.hpp"

namespace steiner {

using NodeId = std::uint32_t;
inline constexpr NodeId kZeroSink = 0;
inline constexpr NodeId kOneSink = 1;

inline bool is_sink(NodeId id) { return id <= kOneSink; }

// Node at level i decides edge e_i. Arcs lead to level i + 1 or to a sink.
struct BddNode {
  std::uint32_t level = 0;
  NodeId lo = kZeroSink;
  NodeId hi = kZeroSink;
  Cost cost = 0;  // smallest root-to-node path cost

  NodeId child(int branch) const { return branch ? hi : lo; }
};

// Layered BDD over a fixed edge order. Ids 0 and 1 are the sinks; internal
// nodes are numbered level by level from 2. An empty BDD (no tree) has the
// 0-sink as root.
class Bdd {
 public:
  Bdd() = default;
  Bdd(std::vector<EdgeId> level_edges, std::vector<Cost> level_costs,
      std::vector<BddNode> internal, NodeId root, std::size_t terminal_count,
      std::vector<NodeInfo> infos = {});

  std::size_t level_count() const { return level_edges_.size(); }
  EdgeId edge_at(std::size_t level) const { return level_edges_[level - 1]; }
  Cost cost_at(std::size_t level) const { return level_costs_[level - 1]; }
  std::span<const EdgeId> level_edges() const { return level_edges_; }

  NodeId root() const { return root_; }
  bool empty() const { return root_ == kZeroSink; }
  std::size_t terminal_count() const { return terminal_count_; }

  // Internal nodes only; sinks are not counted.
  std::size_t node_count() const { return nodes_.size() - 2; }
  const BddNode& node(NodeId id) const { return nodes_[id]; }
  std::span<const BddNode> nodes() const { return nodes_; }

  // Ids [first, last) of the nodes at `level`, 1 <= level <= level_count().
  NodeId layer_begin(std::size_t level) const { return layer_begin_[level]; }
  NodeId layer_end(std::size_t level) const { return layer_begin_[level + 1]; }
  std::size_t layer_width(std::size_t level) const {
    return layer_end(level) - layer_begin(level);
  }
  std::size_t max_layer_width() const;

  // Frontier state per node when construction kept it; empty otherwise.
  bool has_infos() const { return !infos_.empty(); }
  const NodeInfo& info(NodeId id) const { return infos_[id - 2]; }

 private:
  std::vector<EdgeId> level_edges_;
  std::vector<Cost> level_costs_;
  std::vector<BddNode> nodes_;
  std::vector<NodeId> layer_begin_;
  NodeId root_ = kZeroSink;
  std::size_t terminal_count_ = 0;
  std::vector<NodeInfo> infos_;
};

// Text dump: header "bdd <num-nodes> <num-edges-in-graph>", then one line
// "<node-id> <level> <lo> <hi>" per internal node; sinks print as 0 and 1.
void dump_bdd(std::ostream& out, const Bdd& bdd);

}  // namespace steiner
