#include "steiner/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace steiner {
namespace {

bool terminals_connected(const Graph& g) {
  if (g.terminal_count() < 2) return true;
  std::vector<bool> seen(g.vertex_count() + 1, false);
  std::vector<VertexId> stack{g.terminals().front()};
  seen[stack.back()] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.edge(e).other(v);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(g.terminals().begin(), g.terminals().end(),
                     [&](VertexId t) { return seen[t]; });
}

// Removes non-terminal leaves until every leaf is a terminal.
std::vector<EdgeId> prune_leaves(const Graph& g, std::vector<EdgeId> edges) {
  std::vector<std::uint32_t> degree(g.vertex_count() + 1, 0);
  std::vector<std::vector<EdgeId>> incident(g.vertex_count() + 1);
  for (EdgeId e : edges) {
    ++degree[g.edge(e).u];
    ++degree[g.edge(e).v];
    incident[g.edge(e).u].push_back(e);
    incident[g.edge(e).v].push_back(e);
  }
  std::vector<bool> removed(g.edge_count(), false);
  std::vector<VertexId> leaves;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    if (degree[v] == 1 && !g.is_terminal(v)) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    VertexId v = leaves.back();
    leaves.pop_back();
    if (degree[v] != 1) continue;
    for (EdgeId e : incident[v]) {
      if (removed[e]) continue;
      removed[e] = true;
      VertexId w = g.edge(e).other(v);
      --degree[v];
      --degree[w];
      if (degree[w] == 1 && !g.is_terminal(w)) leaves.push_back(w);
      break;
    }
  }
  std::erase_if(edges, [&](EdgeId e) { return removed[e]; });
  return edges;
}

SeedResult make_result(const Graph& g, std::vector<SteinerTree> trees) {
  std::vector<EdgeId> all;
  for (const SteinerTree& t : trees) {
    all.insert(all.end(), t.edges.begin(), t.edges.end());
  }
  SeedResult result{edge_subgraph(g, all), std::move(trees)};
  return result;
}

}  // namespace

SteinerTree tosp_tree(const Graph& g, VertexId root) {
  if (root < 1 || root > g.vertex_count() || !g.is_terminal(root)) {
    throw GraphError("ToSP root " + std::to_string(root) + " is not a terminal");
  }
  const VertexId n = g.vertex_count();
  std::vector<Cost> dist(n + 1, kInfiniteCost);
  std::vector<VertexId> pred(n + 1, 0);
  std::vector<EdgeId> pred_edge(n + 1, 0);
  std::vector<bool> settled(n + 1, false);

  using Item = std::pair<Cost, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[root] = 0;
  heap.emplace(0, root);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != dist[u]) continue;
    settled[u] = true;
    for (EdgeId e : g.incident(u)) {
      const Edge& edge = g.edge(e);
      VertexId v = edge.other(u);
      if (settled[v]) continue;
      Cost nd = d + edge.cost;
      bool better = nd < dist[v];
      if (!better && nd == dist[v]) {
        better = u < pred[v] ||
                 (u == pred[v] && std::pair(edge.cost, e) <
                                      std::pair(g.edge(pred_edge[v]).cost,
                                                pred_edge[v]));
      }
      if (better) {
        if (nd < dist[v]) heap.emplace(nd, v);
        dist[v] = nd;
        pred[v] = u;
        pred_edge[v] = e;
      }
    }
  }

  std::vector<bool> used(g.edge_count(), false);
  std::vector<EdgeId> edges;
  for (VertexId t : g.terminals()) {
    if (dist[t] == kInfiniteCost) {
      throw GraphError("terminal " + std::to_string(t) +
                       " unreachable from ToSP root");
    }
    for (VertexId v = t; v != root; v = pred[v]) {
      if (used[pred_edge[v]]) break;
      used[pred_edge[v]] = true;
      edges.push_back(pred_edge[v]);
    }
  }
  return make_tree(g, prune_leaves(g, std::move(edges)));
}

SeedResult select_seeds(const Graph& g, const SeedConfig& cfg) {
  if (cfg.num_seeds < 1) throw GraphError("num_seeds must be at least 1");
  if (!(cfg.perturb_fraction >= 0.0 && cfg.perturb_fraction < 1.0)) {
    throw GraphError("perturb fraction must lie in [0, 1)");
  }
  const VertexId root = cfg.root.value_or(min_degree_terminal(g));

  std::vector<SteinerTree> trees{tosp_tree(g, root)};
  std::set<std::vector<EdgeId>> seen{trees.front().edges};

  const std::size_t m = g.edge_count();
  const auto to_delete = static_cast<std::size_t>(
      std::ceil(cfg.perturb_fraction * static_cast<double>(m) - 1e-12));
  const int budget = cfg.max_attempts_per_seed * (cfg.num_seeds - 1);
  int attempts = 0;
  std::vector<EdgeId> perm(m);
  while (static_cast<int>(trees.size()) < cfg.num_seeds && attempts < budget &&
         to_delete > 0) {
    // One independent stream per attempt keeps runs reproducible.
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed),
                      static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(attempts)};
    std::mt19937_64 rng(seq);
    ++attempts;

    std::iota(perm.begin(), perm.end(), EdgeId{0});
    for (std::size_t i = 0; i < to_delete; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng() % (m - i));
      std::swap(perm[i], perm[j]);
    }
    std::vector<EdgeId> keep(perm.begin() + static_cast<std::ptrdiff_t>(to_delete),
                             perm.end());
    EdgeSubgraph perturbed = edge_subgraph(g, keep);
    if (!terminals_connected(perturbed.graph)) continue;

    SteinerTree tree =
        lift_tree(tosp_tree(perturbed.graph, root), perturbed.parent_edge);
    if (seen.insert(tree.edges).second) trees.push_back(std::move(tree));
  }

  SeedResult result = make_result(g, std::move(trees));
  result.attempts = attempts;
  result.shortfall = static_cast<int>(result.trees.size()) < cfg.num_seeds;
  return result;
}

SeedResult seeds_from_trees(const Graph& g, std::vector<SteinerTree> trees) {
  if (trees.empty()) throw GraphError("no seed trees supplied");
  return make_result(g, std::move(trees));
}

}  // namespace steiner
