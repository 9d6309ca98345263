#include "steiner/oracle.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steiner {
namespace {

// Reusable scratch for testing one subset against the definition of a
// minimal Steiner tree.
class SubsetChecker {
 public:
  explicit SubsetChecker(const Graph& g)
      : g_(g), parent_(g.vertex_count() + 1), degree_(g.vertex_count() + 1) {}

  // Returns the cost if `mask` is a minimal Steiner tree, otherwise -1.
  Cost check(std::uint64_t mask) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
    std::fill(degree_.begin(), degree_.end(), 0);
    Cost cost = 0;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const Edge& e = g_.edge(static_cast<EdgeId>(__builtin_ctzll(rest)));
      VertexId a = find(e.u);
      VertexId b = find(e.v);
      if (a == b) return -1;
      parent_[a] = b;
      ++degree_[e.u];
      ++degree_[e.v];
      cost += e.cost;
    }
    const VertexId root = find(g_.terminals().front());
    for (VertexId t : g_.terminals()) {
      if (find(t) != root) return -1;
    }
    for (VertexId v = 1; v <= g_.vertex_count(); ++v) {
      if (degree_[v] == 0) continue;
      if (find(v) != root) return -1;
      if (degree_[v] == 1 && !g_.is_terminal(v)) return -1;
    }
    return cost;
  }

 private:
  VertexId find(VertexId v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  const Graph& g_;
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> degree_;
};

SteinerTree tree_of(std::uint64_t mask, Cost cost) {
  SteinerTree t;
  t.cost = cost;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    t.edges.push_back(static_cast<EdgeId>(__builtin_ctzll(rest)));
  }
  return t;
}

}  // namespace

OracleResult brute_force_minimal_steiner(const Graph& g, Cost theta,
                                         Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  if (g.edge_count() > kOracleMaxEdges) {
    throw OracleSizeError("oracle sweep limited to " +
                          std::to_string(kOracleMaxEdges) + " edges, got " +
                          std::to_string(g.edge_count()));
  }
  if (g.terminal_count() == 0) throw OracleSizeError("graph has no terminals");

  const auto subsets = static_cast<std::int64_t>(std::uint64_t{1} << g.edge_count());
  std::vector<SteinerTree> trees;
  if (exec == Execution::kSerial) {
    SubsetChecker checker(g);
    for (std::int64_t mask = 0; mask < subsets; ++mask) {
      Cost c = checker.check(static_cast<std::uint64_t>(mask));
      if (c >= 0 && c <= theta) trees.push_back(tree_of(static_cast<std::uint64_t>(mask), c));
    }
  } else {
#pragma omp parallel
    {
      SubsetChecker checker(g);
      std::vector<SteinerTree> local;
#pragma omp for schedule(static) nowait
      for (std::int64_t mask = 0; mask < subsets; ++mask) {
        Cost c = checker.check(static_cast<std::uint64_t>(mask));
        if (c >= 0 && c <= theta) local.push_back(tree_of(static_cast<std::uint64_t>(mask), c));
      }
#pragma omp critical
      trees.insert(trees.end(), std::make_move_iterator(local.begin()),
                   std::make_move_iterator(local.end()));
    }
  }
  std::sort(trees.begin(), trees.end());
  return {std::move(trees), std::chrono::steady_clock::now() - start};
}

std::uint64_t count_simple_paths(const Graph& g, VertexId s, VertexId t) {
  if (s == t) throw std::invalid_argument("s and t must differ");
  std::vector<bool> on_path(g.vertex_count() + 1, false);
  std::uint64_t count = 0;
  // Explicit stack of (vertex, next incidence position).
  std::vector<std::pair<VertexId, std::size_t>> stack{{s, 0}};
  on_path[s] = true;
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    auto incident = g.incident(v);
    if (pos == incident.size()) {
      on_path[v] = false;
      stack.pop_back();
      continue;
    }
    const Edge& e = g.edge(incident[pos++]);
    if (e.is_loop()) continue;
    VertexId w = e.other(v);
    if (w == t) {
      ++count;
    } else if (!on_path[w]) {
      on_path[w] = true;
      stack.emplace_back(w, 0);
    }
  }
  return count;
}

}  // namespace steiner
