#include "steiner/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

namespace steiner {

Graph::Graph(VertexId vertex_count, std::vector<Edge> edges,
             std::vector<VertexId> terminals, std::int64_t cost_scale)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      terminals_(std::move(terminals)),
      cost_scale_(cost_scale) {
  if (cost_scale_ < 1) throw GraphError("cost scale must be positive");
  for (const Edge& e : edges_) {
    if (e.u < 1 || e.u > vertex_count_ || e.v < 1 || e.v > vertex_count_) {
      throw GraphError("vertex id out of range in edge (" +
                       std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (e.cost < 0) throw GraphError("negative edge weight");
  }
  std::sort(terminals_.begin(), terminals_.end());
  terminals_.erase(std::unique(terminals_.begin(), terminals_.end()),
                   terminals_.end());
  is_terminal_.assign(vertex_count_ + 1, false);
  for (VertexId t : terminals_) {
    if (t < 1 || t > vertex_count_) {
      throw GraphError("terminal id out of range: " + std::to_string(t));
    }
    is_terminal_[t] = true;
  }

  offsets_.assign(vertex_count_ + 2, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incidence_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    incidence_[fill[edges_[id].u]++] = id;
    incidence_[fill[edges_[id].v]++] = id;
  }
}

bool Graph::is_connected(bool allow_isolated) const {
  if (vertex_count_ == 0) return true;
  VertexId start = 0;
  for (VertexId v = 1; v <= vertex_count_ && start == 0; ++v) {
    if (degree(v) > 0 || is_terminal(v)) start = v;
  }
  if (start == 0) return allow_isolated || vertex_count_ <= 1;

  std::vector<bool> seen(vertex_count_ + 1, false);
  std::vector<VertexId> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident(v)) {
      VertexId w = edges_[e].other(v);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (VertexId v = 1; v <= vertex_count_; ++v) {
    if (seen[v]) continue;
    if (!allow_isolated || degree(v) > 0 || is_terminal(v)) return false;
  }
  return true;
}

void Graph::validate(bool allow_isolated) const {
  if (!is_connected(allow_isolated)) throw GraphError("graph is disconnected");
}

EdgeSubgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<EdgeId> ids(edges.begin(), edges.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<Edge> kept;
  kept.reserve(ids.size());
  for (EdgeId e : ids) {
    if (e >= g.edge_count()) throw GraphError("edge id out of range");
    kept.push_back(g.edge(e));
  }
  std::vector<VertexId> terminals(g.terminals().begin(), g.terminals().end());
  return {Graph(g.vertex_count(), std::move(kept), std::move(terminals),
                g.cost_scale()),
          std::move(ids)};
}

EdgeOrder::EdgeOrder(const Graph& g, std::vector<EdgeId> permutation)
    : permutation_(std::move(permutation)) {
  const std::size_t m = permutation_.size();
  if (m != g.edge_count()) throw GraphError("edge order is not a permutation");
  std::vector<bool> used(m, false);
  for (EdgeId e : permutation_) {
    if (e >= m || used[e]) throw GraphError("edge order is not a permutation");
    used[e] = true;
  }

  // remaining[v] = incidences of v not yet processed; entered[v] once any
  // incident edge has been processed.
  std::vector<std::size_t> remaining(g.vertex_count() + 1);
  for (VertexId v = 1; v <= g.vertex_count(); ++v) remaining[v] = g.degree(v);
  std::vector<bool> entered(g.vertex_count() + 1, false);

  frontiers_.assign(m + 1, {});
  std::vector<VertexId> current;
  for (std::size_t step = 1; step <= m; ++step) {
    const Edge& e = g.edge(permutation_[step - 1]);
    --remaining[e.u];
    --remaining[e.v];
    std::vector<VertexId> next;
    next.reserve(current.size() + 2);
    for (VertexId v : current) {
      if (remaining[v] > 0) next.push_back(v);
    }
    for (VertexId v : {e.u, e.v}) {
      if (!entered[v]) {
        entered[v] = true;
        if (remaining[v] > 0) next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier_width_ = std::max(frontier_width_, next.size());
    frontiers_[step] = next;
    current = std::move(next);
  }
}

VertexId min_degree_terminal(const Graph& g) {
  VertexId best = 0;
  for (VertexId t : g.terminals()) {
    if (best == 0 || g.degree(t) < g.degree(best)) best = t;
  }
  if (best == 0) throw GraphError("graph has no terminals");
  return best;
}

EdgeOrder order_edges(const Graph& g, OrderPolicy policy) {
  const std::size_t m = g.edge_count();
  std::vector<EdgeId> perm;
  perm.reserve(m);
  if (policy.kind == OrderPolicy::Kind::kInputOrder) {
    perm.resize(m);
    std::iota(perm.begin(), perm.end(), EdgeId{0});
    return EdgeOrder(g, std::move(perm));
  }

  VertexId start = policy.kind == OrderPolicy::Kind::kStartVertex
                       ? policy.start
                       : min_degree_terminal(g);
  if (start < 1 || start > g.vertex_count()) {
    throw GraphError("BFS start vertex out of range");
  }

  std::vector<bool> emitted(m, false);
  std::vector<bool> visited(g.vertex_count() + 1, false);
  std::deque<VertexId> queue{start};
  visited[start] = true;
  std::vector<std::pair<VertexId, EdgeId>> pending;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    pending.clear();
    for (EdgeId e : g.incident(v)) {
      if (!emitted[e]) pending.emplace_back(g.edge(e).other(v), e);
    }
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    for (auto [w, e] : pending) {
      emitted[e] = true;
      perm.push_back(e);
      if (!visited[w]) {
        visited[w] = true;
        queue.push_back(w);
      }
    }
  }
  for (EdgeId e = 0; e < m; ++e) {
    if (!emitted[e]) perm.push_back(e);
  }
  return EdgeOrder(g, std::move(perm));
}

bool SimplificationMap::is_identity() const {
  if (!removed_loops.empty()) return false;
  for (std::size_t e = 0; e < replacements.size(); ++e) {
    if (replacements[e].size() != 1 || replacements[e][0] != e) return false;
  }
  return true;
}

}  // namespace steiner
