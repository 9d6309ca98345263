#include "steiner/steiner_tree.hpp"

#include <algorithm>
#include <numeric>

namespace steiner {

SteinerTree make_tree(const Graph& g, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Cost cost = 0;
  for (EdgeId e : edges) cost += g.edge(e).cost;
  return {std::move(edges), cost};
}

bool validate_tree(const SteinerTree& tree, const Graph& g) {
  if (g.terminal_count() == 0) return tree.edges.empty();

  std::vector<VertexId> parent(g.vertex_count() + 1);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<std::uint32_t> degree(g.vertex_count() + 1, 0);
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    if (i > 0 && tree.edges[i] == tree.edges[i - 1]) return false;
    const Edge& e = g.edge(tree.edges[i]);
    VertexId ru = find(e.u);
    VertexId rv = find(e.v);
    if (ru == rv) return false;  // cycle, including self-loops
    parent[ru] = rv;
    ++degree[e.u];
    ++degree[e.v];
  }

  const VertexId root = find(g.terminals().front());
  for (VertexId t : g.terminals()) {
    if (find(t) != root) return false;
  }
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    if (degree[v] == 0) continue;
    if (find(v) != root) return false;
    if (degree[v] == 1 && !g.is_terminal(v)) return false;
  }
  return true;
}

SteinerTree expand_tree(const SteinerTree& tree, const SimplificationMap& map) {
  std::vector<EdgeId> edges;
  for (EdgeId e : tree.edges) {
    if (e >= map.replacements.size()) {
      throw GraphError("edge " + std::to_string(e) +
                       " is not in the simplified graph");
    }
    const auto& path = map.replacements[e];
    edges.insert(edges.end(), path.begin(), path.end());
  }
  std::sort(edges.begin(), edges.end());
  return {std::move(edges), tree.cost};
}

SteinerTree lift_tree(const SteinerTree& tree,
                      std::span<const EdgeId> parent_edge) {
  std::vector<EdgeId> edges;
  edges.reserve(tree.edges.size());
  for (EdgeId e : tree.edges) {
    if (e >= parent_edge.size()) throw GraphError("edge id out of range");
    edges.push_back(parent_edge[e]);
  }
  std::sort(edges.begin(), edges.end());
  return {std::move(edges), tree.cost};
}

}  // namespace steiner
