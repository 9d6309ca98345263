#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "steiner/execution.hpp"
#include "steiner/graph.hpp"
#include "steiner/steiner_tree.hpp"

namespace steiner {

inline constexpr std::size_t kOracleMaxEdges = 24;

class OracleSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  std::vector<SteinerTree> trees;  // ascending (cost, edges)
  std::chrono::nanoseconds elapsed{0};
};

// Exhaustive sweep over all 2^|E| edge subsets, keeping those that
// validate_tree accepts and cost at most theta. Throws OracleSizeError above
// kOracleMaxEdges edges.
OracleResult brute_force_minimal_steiner(const Graph& g, Cost theta,
                                         Execution exec = Execution::kSerial);

// Simple s-t paths as distinct edge sets (parallel edges give distinct paths),
// by depth-first search with on-path marking.
std::uint64_t count_simple_paths(const Graph& g, VertexId s, VertexId t);

}  // namespace steiner
