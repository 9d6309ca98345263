#include "steiner/bdd.hpp"

#include <algorithm>
#include <cassert>

namespace steiner {

Bdd::Bdd(std::vector<EdgeId> level_edges, std::vector<Cost> level_costs,
         std::vector<BddNode> internal, NodeId root, std::size_t terminal_count,
         std::vector<NodeInfo> infos)
    : level_edges_(std::move(level_edges)),
      level_costs_(std::move(level_costs)),
      root_(root),
      terminal_count_(terminal_count),
      infos_(std::move(infos)) {
  assert(level_edges_.size() == level_costs_.size());
  assert(infos_.empty() || infos_.size() == internal.size());
  const std::size_t m = level_edges_.size();
  nodes_.reserve(internal.size() + 2);
  nodes_.push_back({});
  nodes_.push_back({});
  nodes_.insert(nodes_.end(), internal.begin(), internal.end());

  layer_begin_.assign(m + 2, static_cast<NodeId>(nodes_.size()));
  std::size_t id = 2;
  for (std::size_t level = 1; level <= m; ++level) {
    layer_begin_[level] = static_cast<NodeId>(id);
    while (id < nodes_.size() && nodes_[id].level == level) ++id;
  }
  layer_begin_[m + 1] = static_cast<NodeId>(id);
  assert(id == nodes_.size());
}

std::size_t Bdd::max_layer_width() const {
  std::size_t width = 0;
  for (std::size_t level = 1; level <= level_count(); ++level) {
    width = std::max(width, layer_width(level));
  }
  return width;
}

void dump_bdd(std::ostream& out, const Bdd& bdd) {
  out << "bdd " << bdd.node_count() << " " << bdd.level_count() << "\n";
  for (NodeId id = 2; id < bdd.nodes().size(); ++id) {
    const BddNode& n = bdd.node(id);
    out << id << " " << n.level << " " << n.lo << " " << n.hi << "\n";
  }
}

}  // namespace steiner
