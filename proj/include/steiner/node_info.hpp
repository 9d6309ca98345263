#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "steiner/graph.hpp"

namespace steiner {

// State of one frontier vertex. `unproc` and `term` describe the whole
// component and are equal on every slot that shares `comp`.
struct FrontierSlot {
  VertexId comp = 0;         // smallest frontier vertex of the component
  std::uint32_t unproc = 0;  // unprocessed incidences of the component's frontier vertices
  std::uint32_t term = 0;    // terminals connected to the component
  std::uint32_t degree = 0;  // chosen edges incident to this vertex

  friend bool operator==(const FrontierSlot&, const FrontierSlot&) = default;
};

// Frontier state of a BDD node at level i: `slots[p]` belongs to vertex
// `order.frontier(i - 1)[p]`.
struct NodeInfo {
  std::vector<FrontierSlot> slots;
  Cost cost = 0;

  friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
};

// Two nodes of one layer may be merged iff their keys are equal: same
// partition of the frontier, same terminal presence per component, same
// degrees. Costs and exact terminal counts are not part of the key.
struct MergeKey {
  std::vector<std::uint32_t> words;

  friend bool operator==(const MergeKey&, const MergeKey&) = default;
};

inline bool same_merge_class(std::span<const FrontierSlot> a,
                             std::span<const FrontierSlot> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p].comp != b[p].comp || (a[p].term > 0) != (b[p].term > 0) ||
        a[p].degree != b[p].degree) {
      return false;
    }
  }
  return true;
}

inline std::size_t merge_class_hash(std::span<const FrontierSlot> slots) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const FrontierSlot& s : slots) {
    mix(s.comp);
    mix((static_cast<std::uint64_t>(s.degree) << 1) | (s.term > 0 ? 1u : 0u));
  }
  return static_cast<std::size_t>(h);
}

struct MergeKeyHash {
  std::size_t operator()(const MergeKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t w : k.words) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace steiner
