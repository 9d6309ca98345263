#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace steiner {

using VertexId = std::uint32_t;  // 1-based, 0 is never a valid vertex
using EdgeId = std::uint32_t;    // 0-based index into Graph::edges()
using Cost = std::int64_t;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Cost cost = 0;

  bool is_loop() const { return u == v; }
  VertexId other(VertexId w) const { return w == u ? v : u; }
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Weighted undirected multigraph with a terminal set. Immutable after
// construction. Edge order is the canonical edge indexing.
class Graph {
 public:
  Graph() = default;

  // Throws GraphError on out-of-range ids or negative costs. Connectivity is
  // checked separately (see Graph::validate) because derived graphs such as
  // seed unions keep the parent's vertex ids and may have isolated vertices.
  Graph(VertexId vertex_count, std::vector<Edge> edges,
        std::vector<VertexId> terminals, std::int64_t cost_scale = 1);

  VertexId vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  // Sorted ascending, no duplicates.
  std::span<const VertexId> terminals() const { return terminals_; }
  bool is_terminal(VertexId v) const { return is_terminal_[v]; }
  std::size_t terminal_count() const { return terminals_.size(); }

  // Incident edge ids of v in ascending order; a loop appears twice.
  std::span<const EdgeId> incident(VertexId v) const {
    return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Decimal inputs are scaled to integers by this factor.
  std::int64_t cost_scale() const { return cost_scale_; }

  // True if every vertex that has an incident edge, and every terminal, lies
  // in a single connected component. With `allow_isolated == false` every
  // vertex must be reached.
  bool is_connected(bool allow_isolated = false) const;

  // Throws GraphError if the graph is not connected.
  void validate(bool allow_isolated = false) const;

 private:
  VertexId vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexId> terminals_;
  std::vector<bool> is_terminal_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> incidence_;
  std::int64_t cost_scale_ = 1;
};

// A graph built from a subset of a parent graph's edges. Vertex ids and the
// terminal set are unchanged; `parent_edge[i]` is the parent index of edge i.
struct EdgeSubgraph {
  Graph graph;
  std::vector<EdgeId> parent_edge;
};

// Edge ids must be valid in `g`; duplicates are ignored and the subgraph keeps
// them in ascending parent order.
EdgeSubgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges);

// Fixed edge permutation plus the frontier after every step.
//
// step i (1-based) processes edge `edge_at(i)`. frontier(i) lists, in
// ascending order, the vertices incident both to an edge processed at a step
// <= i and to an edge processed after i. frontier(0) and frontier(m) are empty.
class EdgeOrder {
 public:
  EdgeOrder() = default;
  EdgeOrder(const Graph& g, std::vector<EdgeId> permutation);

  std::size_t size() const { return permutation_.size(); }
  std::span<const EdgeId> permutation() const { return permutation_; }
  EdgeId edge_at(std::size_t step) const { return permutation_[step - 1]; }
  std::span<const VertexId> frontier(std::size_t step) const {
    return frontiers_[step];
  }
  std::size_t frontier_width() const { return frontier_width_; }

 private:
  std::vector<EdgeId> permutation_;
  std::vector<std::vector<VertexId>> frontiers_;
  std::size_t frontier_width_ = 0;
};

struct OrderPolicy {
  enum class Kind {
    kMinDegreeTerminal,  // BFS from the terminal of minimum degree
    kStartVertex,        // BFS from `start`
    kInputOrder,         // identity permutation
  };
  Kind kind = Kind::kMinDegreeTerminal;
  VertexId start = 0;
};

// Terminal of minimum degree, ties broken by smallest id.
VertexId min_degree_terminal(const Graph& g);

// Breadth-first edge order. When a vertex is dequeued its not-yet-emitted
// incident edges are emitted ordered by (neighbor id, edge id) and unvisited
// neighbors are enqueued in that order. Edges unreachable from the start are
// appended in index order.
EdgeOrder order_edges(const Graph& g, OrderPolicy policy = {});

struct SimplificationMap {
  // replacements[e] lists the input-graph edges forming simplified edge e,
  // ordered along the path from edge(e).u to edge(e).v.
  std::vector<std::vector<EdgeId>> replacements;
  // Input-graph edges deleted as (possibly contracted) self-loops.
  std::vector<EdgeId> removed_loops;

  // True if no edge was contracted or removed.
  bool is_identity() const;
};

struct Simplified {
  Graph graph;
  SimplificationMap map;
};

// Deletes self-loops and contracts non-terminal vertices of degree two into a
// single edge of summed cost, until nothing changes. Parallel edges created by
// contraction are kept. Surviving edges are ordered by their smallest input
// edge id.
Simplified simplify(const Graph& g);

// Graph in SteinLib STP format.
Graph parse_stp(std::istream& in);
Graph parse_stp_string(const std::string& text);
Graph load_stp(const std::string& path);
void write_stp(std::ostream& out, const Graph& g);

}  // namespace steiner
