#include "steiner/bdd_ops.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace steiner {

Bdd reduce(const Bdd& bdd, Execution exec) {
  const auto total = static_cast<std::int64_t>(bdd.nodes().size());
  std::vector<char> alive(static_cast<std::size_t>(total), 0);
  alive[kOneSink] = 1;
  const bool parallel = exec == Execution::kParallel;
  for (std::size_t level = bdd.level_count(); level >= 1; --level) {
    const std::int64_t first = bdd.layer_begin(level);
    const std::int64_t last = bdd.layer_end(level);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t id = first; id < last; ++id) {
      const BddNode& n = bdd.node(static_cast<NodeId>(id));
      alive[static_cast<std::size_t>(id)] = alive[n.lo] || alive[n.hi];
    }
  }

  std::vector<NodeId> remap(static_cast<std::size_t>(total), kZeroSink);
  remap[kOneSink] = kOneSink;
  NodeId next = 2;
  for (std::int64_t id = 2; id < total; ++id) {
    if (alive[static_cast<std::size_t>(id)]) remap[static_cast<std::size_t>(id)] = next++;
  }
  std::vector<BddNode> kept;
  std::vector<NodeInfo> infos;
  kept.reserve(next - 2);
  for (NodeId id = 2; id < static_cast<NodeId>(total); ++id) {
    if (!alive[id]) continue;
    BddNode n = bdd.node(id);
    n.lo = remap[n.lo];
    n.hi = remap[n.hi];
    kept.push_back(n);
    if (bdd.has_infos()) infos.push_back(bdd.info(id));
  }
  std::vector<EdgeId> edges(bdd.level_edges().begin(), bdd.level_edges().end());
  std::vector<Cost> costs;
  for (std::size_t level = 1; level <= bdd.level_count(); ++level) {
    costs.push_back(bdd.cost_at(level));
  }
  return Bdd(std::move(edges), std::move(costs), std::move(kept),
             remap[bdd.root()], bdd.terminal_count(), std::move(infos));
}

BigCount count_trees(const Bdd& bdd, Execution exec) {
  std::vector<BigCount> count(bdd.nodes().size());
  count[kOneSink] = 1;
  const bool parallel = exec == Execution::kParallel;
  for (std::size_t level = bdd.level_count(); level >= 1; --level) {
    const std::int64_t first = bdd.layer_begin(level);
    const std::int64_t last = bdd.layer_end(level);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
    for (std::int64_t id = first; id < last; ++id) {
      const BddNode& n = bdd.node(static_cast<NodeId>(id));
      count[static_cast<std::size_t>(id)] = count[n.lo] + count[n.hi];
    }
  }
  return count[bdd.root()];
}

namespace {

constexpr std::uint64_t kNoParent = ~std::uint64_t{0};

// Back-reference for one retained cost entry: the entry it extends and the
// decision (level, bit) that produced it.
struct ArenaEntry {
  Cost cost;
  std::uint64_t parent;
  std::uint32_t level;
  std::uint8_t bit;
};

struct Candidate {
  Cost cost;
  std::uint64_t parent;  // arena index; ascending with (parent node, entry index)
  std::uint8_t bit;

  auto key() const { return std::tie(cost, parent, bit); }
  friend bool operator<(const Candidate& a, const Candidate& b) {
    return a.key() < b.key();
  }
};

struct SinkEntry {
  Candidate candidate;
  std::uint32_t level;
  friend bool operator<(const SinkEntry& a, const SinkEntry& b) {
    return a.candidate < b.candidate;
  }
};

// Entries of one layer in CSR form: node i of the layer owns
// ids[offset[i] .. offset[i + 1]).
struct LayerEntries {
  std::vector<std::size_t> offset;
  std::vector<std::uint64_t> ids;

  std::size_t size() const { return ids.size(); }
};

}  // namespace

// Cheapest cost from each node to the 1-sink; kInfiniteCost if unreachable.
std::vector<Cost> completion_costs(const Bdd& bdd) {
  std::vector<Cost> best(bdd.nodes().size(), kInfiniteCost);
  best[kOneSink] = 0;
  for (std::size_t level = bdd.level_count(); level >= 1; --level) {
    const Cost c = bdd.cost_at(level);
    for (NodeId id = bdd.layer_begin(level); id < bdd.layer_end(level); ++id) {
      const BddNode& n = bdd.node(id);
      Cost via_hi = best[n.hi] > kInfiniteCost - c ? kInfiniteCost : best[n.hi] + c;
      best[id] = std::min(best[n.lo], via_hi);
    }
  }
  return best;
}

namespace {

// Drops arena entries that no live entry or sink entry descends from.
// Indices are remapped monotonically, so candidate order is unchanged.
void compact_arena(std::vector<ArenaEntry>& arena, LayerEntries& live,
                   std::vector<SinkEntry>& sink) {
  std::vector<char> used(arena.size(), 0);
  auto mark = [&](std::uint64_t e) {
    while (e != kNoParent && !used[e]) {
      used[e] = 1;
      e = arena[e].parent;
    }
  };
  for (std::uint64_t e : live.ids) mark(e);
  for (const SinkEntry& s : sink) mark(s.candidate.parent);

  std::vector<std::uint64_t> remap(arena.size(), kNoParent);
  std::uint64_t next = 0;
  for (std::size_t e = 0; e < arena.size(); ++e) {
    if (!used[e]) continue;
    remap[e] = next;
    ArenaEntry moved = arena[e];
    if (moved.parent != kNoParent) moved.parent = remap[moved.parent];
    arena[next++] = moved;
  }
  arena.resize(next);
  arena.shrink_to_fit();
  for (std::uint64_t& e : live.ids) e = remap[e];
  for (SinkEntry& s : sink) s.candidate.parent = remap[s.candidate.parent];
}

}  // namespace

EnumerateResult enumerate(const Bdd& bdd, const Graph& g,
                          const EnumerateOptions& options) {
  if (options.k == 0) throw EnumerationError("k must be positive");
  if (g.edge_count() != bdd.level_count()) {
    throw EnumerationError("BDD does not belong to this graph");
  }
  const std::size_t k = options.k;
  const std::size_t cap = std::max(options.cap == 0 ? 10 * k : options.cap, k);
  const Cost theta = options.theta;
  const bool parallel = options.exec == Execution::kParallel;

  EnumerateResult result;
  if (bdd.empty()) return result;
  const std::vector<Cost> completion = completion_costs(bdd);

  std::vector<ArenaEntry> arena{{0, kNoParent, 0, 0}};
  LayerEntries prev{{0, 1}, {0}};
  // Max-heap (std::push_heap order) holding the cheapest `cap` arrivals.
  std::vector<SinkEntry> sink;
  TraversalStats& stats = result.stats;
  stats.peak_live_entries = 1;
  bool pruned_by_cap = false;
  std::size_t compact_at = std::max<std::size_t>(options.entry_budget / 2, 1);

  auto offer_sink = [&](const Candidate& c, std::uint32_t level) {
    ++stats.sink_arrivals;
    if (sink.size() < cap) {
      sink.push_back({c, level});
      std::push_heap(sink.begin(), sink.end());
    } else if (c < sink.front().candidate) {
      std::pop_heap(sink.begin(), sink.end());
      sink.back() = {c, level};
      std::push_heap(sink.begin(), sink.end());
    }
  };

  std::vector<std::pair<NodeId, std::uint8_t>> incoming;
  std::vector<std::size_t> incoming_offset;
  std::vector<std::vector<Candidate>> kept;

  for (std::size_t level = 1; level <= bdd.level_count(); ++level) {
    const NodeId first = bdd.layer_begin(level);
    const NodeId last = bdd.layer_end(level);
    const Cost edge_cost = g.edge(bdd.edge_at(level)).cost;

    // Arcs into the 1-sink.
    for (NodeId id = first; id < last; ++id) {
      const BddNode& n = bdd.node(id);
      const std::size_t local = id - first;
      for (std::uint8_t bit = 0; bit <= 1; ++bit) {
        if (n.child(bit) != kOneSink) continue;
        for (std::size_t j = prev.offset[local]; j < prev.offset[local + 1]; ++j) {
          const std::uint64_t e = prev.ids[j];
          const Cost c = arena[e].cost + (bit ? edge_cost : 0);
          if (c <= theta) offer_sink({c, e, bit}, static_cast<std::uint32_t>(level));
        }
      }
    }
    if (level == bdd.level_count()) break;

    // Incoming arcs of the next layer, ordered by (parent, bit).
    const NodeId child_first = bdd.layer_begin(level + 1);
    const std::size_t child_count = bdd.layer_width(level + 1);
    incoming_offset.assign(child_count + 1, 0);
    for (NodeId id = first; id < last; ++id) {
      for (int bit = 0; bit <= 1; ++bit) {
        NodeId c = bdd.node(id).child(bit);
        if (!is_sink(c)) ++incoming_offset[c - child_first + 1];
      }
    }
    for (std::size_t i = 0; i < child_count; ++i) {
      incoming_offset[i + 1] += incoming_offset[i];
    }
    incoming.resize(incoming_offset.back());
    {
      std::vector<std::size_t> fill(incoming_offset.begin(),
                                    incoming_offset.end() - 1);
      for (NodeId id = first; id < last; ++id) {
        for (std::uint8_t bit = 0; bit <= 1; ++bit) {
          NodeId c = bdd.node(id).child(bit);
          if (!is_sink(c)) incoming[fill[c - child_first]++] = {id, bit};
        }
      }
    }

    // An entry survives only if some completion stays within theta and, once
    // the sink heap is full, could still displace its worst tree.
    const bool sink_full = sink.size() >= cap;
    const Cost sink_worst = sink_full ? sink.front().candidate.cost : kInfiniteCost;
    int cap_pruned = 0;
    kept.assign(child_count, {});
#pragma omp parallel for schedule(dynamic, 16) if (parallel) reduction(| : cap_pruned)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(child_count); ++ci) {
      const auto c = static_cast<std::size_t>(ci);
      const Cost rest = completion[child_first + c];
      std::vector<Candidate>& out = kept[c];
      for (std::size_t a = incoming_offset[c]; a < incoming_offset[c + 1]; ++a) {
        auto [parent, bit] = incoming[a];
        const std::size_t local = parent - first;
        for (std::size_t j = prev.offset[local]; j < prev.offset[local + 1]; ++j) {
          const std::uint64_t e = prev.ids[j];
          const Cost cost = arena[e].cost + (bit ? edge_cost : 0);
          if (cost > theta || rest > theta - cost) continue;
          if (cost + rest > sink_worst) {
            cap_pruned = 1;
            continue;
          }
          out.push_back({cost, e, bit});
        }
      }
      if (out.size() > k) {
        std::nth_element(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k),
                         out.end());
        out.resize(k);
      }
      std::sort(out.begin(), out.end());
    }
    pruned_by_cap = pruned_by_cap || cap_pruned;

    LayerEntries cur;
    cur.offset.assign(child_count + 1, 0);
    for (std::size_t c = 0; c < child_count; ++c) {
      for (const Candidate& cand : kept[c]) {
        cur.ids.push_back(arena.size());
        arena.push_back({cand.cost, cand.parent, static_cast<std::uint32_t>(level),
                         cand.bit});
      }
      cur.offset[c + 1] = cur.ids.size();
    }
    const std::size_t live = prev.size() + cur.size();
    stats.peak_live_entries = std::max(stats.peak_live_entries, live);
    prev = std::move(cur);
    if (arena.size() > compact_at) {
      compact_arena(arena, prev, sink);
      compact_at = std::min(options.entry_budget, std::max(compact_at, 2 * arena.size()));
    }
    if (live > options.entry_budget || arena.size() > options.entry_budget) {
      std::ostringstream msg;
      msg << "traversal entry budget " << options.entry_budget
          << " exceeded at level " << level + 1 << " (" << live
          << " live entries, " << arena.size() << " retained, layer width "
          << child_count << ")";
      throw EnumerationError(msg.str());
    }
  }

  stats.arena_entries = arena.size();
  stats.truncated = stats.sink_arrivals > cap || pruned_by_cap;

  result.trees.reserve(sink.size());
  for (const SinkEntry& s : sink) {
    std::vector<EdgeId> edges;
    if (s.candidate.bit) edges.push_back(bdd.edge_at(s.level));
    for (std::uint64_t e = s.candidate.parent; arena[e].parent != kNoParent;
         e = arena[e].parent) {
      if (arena[e].bit) edges.push_back(bdd.edge_at(arena[e].level));
    }
    std::sort(edges.begin(), edges.end());
    result.trees.push_back({std::move(edges), s.candidate.cost});
  }
  std::sort(result.trees.begin(), result.trees.end());
  return result;
}

}  // namespace steiner
