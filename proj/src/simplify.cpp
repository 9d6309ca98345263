#include <algorithm>
#include <deque>
#include <set>

#include "steiner/graph.hpp"

namespace steiner {
namespace {

struct WorkEdge {
  VertexId a;
  VertexId b;
  Cost cost;
  std::vector<EdgeId> path;  // input edges from a to b
  EdgeId min_id;
  bool alive = true;
};

// Path of `e` oriented so that it starts at `from`.
std::vector<EdgeId> oriented_path(const WorkEdge& e, VertexId from) {
  std::vector<EdgeId> p = e.path;
  if (e.a != from) std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

Simplified simplify(const Graph& g) {
  SimplificationMap map;
  std::vector<WorkEdge> work;
  std::vector<std::set<std::size_t>> incident(g.vertex_count() + 1);

  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (e.is_loop()) {
      map.removed_loops.push_back(id);
      continue;
    }
    incident[e.u].insert(work.size());
    incident[e.v].insert(work.size());
    work.push_back({e.u, e.v, e.cost, {id}, id});
  }

  std::deque<VertexId> queue;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    if (!g.is_terminal(v) && incident[v].size() == 2) queue.push_back(v);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (g.is_terminal(v) || incident[v].size() != 2) continue;

    std::size_t first = *incident[v].begin();
    std::size_t second = *std::next(incident[v].begin());
    WorkEdge& e1 = work[first];
    WorkEdge& e2 = work[second];
    VertexId a = e1.a == v ? e1.b : e1.a;
    VertexId b = e2.a == v ? e2.b : e2.a;

    std::vector<EdgeId> path = oriented_path(e1, a);
    std::vector<EdgeId> tail = oriented_path(e2, v);
    path.insert(path.end(), tail.begin(), tail.end());
    WorkEdge merged{a, b, e1.cost + e2.cost, std::move(path),
                    std::min(e1.min_id, e2.min_id)};

    e1.alive = false;
    e2.alive = false;
    incident[v].clear();
    incident[a].erase(first);
    incident[b].erase(second);

    if (a == b) {
      map.removed_loops.insert(map.removed_loops.end(), merged.path.begin(),
                               merged.path.end());
      if (!g.is_terminal(a) && incident[a].size() == 2) queue.push_back(a);
      continue;
    }
    incident[a].insert(work.size());
    incident[b].insert(work.size());
    work.push_back(std::move(merged));
  }

  std::vector<const WorkEdge*> alive;
  for (const WorkEdge& e : work) {
    if (e.alive) alive.push_back(&e);
  }
  std::sort(alive.begin(), alive.end(),
            [](const WorkEdge* x, const WorkEdge* y) {
              return x->min_id < y->min_id;
            });
  std::vector<Edge> edges;
  for (const WorkEdge* e : alive) {
    edges.push_back({e->a, e->b, e->cost});
    map.replacements.push_back(e->path);
  }
  std::sort(map.removed_loops.begin(), map.removed_loops.end());
  std::vector<VertexId> terminals(g.terminals().begin(), g.terminals().end());
  return {Graph(g.vertex_count(), std::move(edges), std::move(terminals),
                g.cost_scale()),
          std::move(map)};
}

}  // namespace steiner
