#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "steiner/bdd.hpp"
#include "steiner/graph.hpp"
#include "steiner/node_info.hpp"

namespace steiner {

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an entry point needs at least two terminals.
class TerminalCountError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Transition { kZeroSink, kOneSink, kNode };

// Frontier-based search for minimal Steiner trees of cost <= theta over a
// fixed edge order.
//
// A node at level i carries NodeInfo aligned with frontier(i - 1). Processing
// edge e_i = (v, w) on branch x (0 = exclude, 1 = include) yields either a
// sink or a child NodeInfo aligned with frontier(i).
//
// Per component the state tracks the number of unprocessed incidences of its
// frontier vertices; an unprocessed edge with both ends in one component
// counts twice, so inclusion updates it as unproc(v) + unproc(w) - 2.
class FrontierSearch {
 public:
  FrontierSearch(const Graph& g, const EdgeOrder& order, Cost theta);

  std::size_t step_count() const { return steps_.size(); }
  const Graph& graph() const { return *graph_; }
  const EdgeOrder& order() const { return *order_; }
  Cost theta() const { return theta_; }

  NodeInfo root_info() const { return {}; }

  // Including e_i joins every terminal into one component whose edge set is
  // a minimal Steiner tree.
  bool is_one_sink(const NodeInfo& parent, std::size_t step, int branch) const;

  // Branch can never lead to a minimal Steiner tree of cost <= theta. Only
  // meaningful when is_one_sink is false for the same branch.
  //
  // Include: v and w already connected; v leaves the frontier as a
  // non-terminal leaf; cost exceeds theta; the merged component closes with
  // some but not all terminals; all terminals connected but the edge set is
  // not a minimal tree.
  // Exclude: v is a terminal whose only edge is e_i; a terminal-bearing
  // component loses its last unprocessed edge; v leaves the frontier as a
  // non-terminal leaf. Each rule applies symmetrically to w.
  bool is_zero_sink(const NodeInfo& parent, std::size_t step, int branch) const;

  // Child state; requires both sink tests to be false.
  NodeInfo generate_node(const NodeInfo& parent, std::size_t step,
                         int branch) const;

  // `info` must be aligned with frontier(level - 1).
  MergeKey merge_key(const NodeInfo& info, std::size_t level) const;

  // Keeps `into`'s frontier state and the smaller cost.
  static void merge_node(NodeInfo& into, const NodeInfo& other);

  // All of the above in one pass. On kNode, `child` receives the slots and
  // `child_cost` the cost.
  Transition transition(std::span<const FrontierSlot> parent, Cost parent_cost,
                        std::size_t step, int branch,
                        std::vector<FrontierSlot>& child,
                        Cost& child_cost) const;

 private:
  struct Step {
    VertexId v = 0;
    VertexId w = 0;
    Cost cost = 0;
    std::vector<VertexId> work;      // frontier(i-1) ∪ {v, w}, ascending
    std::vector<int> parent_slot;    // index into frontier(i-1), or -1 if entering
    std::vector<bool> stays;         // member of frontier(i)
    std::size_t pos_v = 0;
    std::size_t pos_w = 0;
    std::size_t child_width = 0;
  };

  const Graph* graph_;
  const EdgeOrder* order_;
  Cost theta_;
  std::vector<Step> steps_;  // steps_[i - 1] describes step i
};

struct ConstructOptions {
  std::size_t node_cap = 100'000'000;
  bool merge = true;       // false: debug mode, every generated node kept
  bool keep_infos = false; // store NodeInfo per node in the result
};

// Layer-by-layer construction. Throws TerminalCountError if |T| < 2 and
// CapacityError when the node cap is exceeded.
Bdd construct(const Graph& g, const EdgeOrder& order, Cost theta,
              const ConstructOptions& options = {});

}  // namespace steiner
