#include "steiner/frontier.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_set>

namespace steiner {

FrontierSearch::FrontierSearch(const Graph& g, const EdgeOrder& order,
                               Cost theta)
    : graph_(&g), order_(&order), theta_(theta) {
  if (order.size() != g.edge_count()) {
    throw GraphError("edge order does not match graph");
  }
  steps_.resize(order.size());
  for (std::size_t i = 1; i <= order.size(); ++i) {
    Step& s = steps_[i - 1];
    const Edge& e = g.edge(order.edge_at(i));
    s.v = e.u;
    s.w = e.v;
    s.cost = e.cost;

    auto prev = order.frontier(i - 1);
    auto next = order.frontier(i);
    s.work.assign(prev.begin(), prev.end());
    s.work.push_back(e.u);
    s.work.push_back(e.v);
    std::sort(s.work.begin(), s.work.end());
    s.work.erase(std::unique(s.work.begin(), s.work.end()), s.work.end());

    for (VertexId x : s.work) {
      auto it = std::lower_bound(prev.begin(), prev.end(), x);
      s.parent_slot.push_back(it != prev.end() && *it == x
                                  ? static_cast<int>(it - prev.begin())
                                  : -1);
      s.stays.push_back(std::binary_search(next.begin(), next.end(), x));
    }
    s.pos_v = static_cast<std::size_t>(
        std::lower_bound(s.work.begin(), s.work.end(), e.u) - s.work.begin());
    s.pos_w = static_cast<std::size_t>(
        std::lower_bound(s.work.begin(), s.work.end(), e.v) - s.work.begin());
    s.child_width = next.size();
  }
}

Transition FrontierSearch::transition(std::span<const FrontierSlot> parent,
                                      Cost parent_cost, std::size_t step,
                                      int branch,
                                      std::vector<FrontierSlot>& child,
                                      Cost& child_cost) const {
  assert(step >= 1 && step <= steps_.size());
  const Step& s = steps_[step - 1];
  const Graph& g = *graph_;
  const std::size_t n = s.work.size();

  thread_local std::vector<FrontierSlot> work;
  work.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (s.parent_slot[j] >= 0) {
      work[j] = parent[static_cast<std::size_t>(s.parent_slot[j])];
    } else {
      const VertexId x = s.work[j];
      work[j] = {x, static_cast<std::uint32_t>(g.degree(x)),
                 g.is_terminal(x) ? 1u : 0u, 0};
    }
  }
  const std::size_t pv = s.pos_v;
  const std::size_t pw = s.pos_w;
  const VertexId cv = work[pv].comp;
  const VertexId cw = work[pw].comp;
  auto terminal = [&](std::size_t j) { return g.is_terminal(s.work[j]); };
  auto leaves = [&](std::size_t j) { return !s.stays[j]; };

  if (branch == 1) {
    if (cv == cw) return Transition::kZeroSink;  // cycle
    if (s.cost > theta_ || parent_cost > theta_ - s.cost) {
      return Transition::kZeroSink;
    }
    const std::uint32_t term = work[pv].term + work[pw].term;

    if (term == g.terminal_count()) {
      // Every later edge is excluded, so the current edge set must already be
      // a single tree whose leaves are all terminals.
      for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t d = work[j].degree + (j == pv) + (j == pw);
        if (d == 0) continue;
        bool in_tree = work[j].comp == cv || work[j].comp == cw;
        if (!in_tree || (d == 1 && !terminal(j))) return Transition::kZeroSink;
      }
      return Transition::kOneSink;
    }

    if ((leaves(pv) && work[pv].degree == 0 && !terminal(pv)) ||
        (leaves(pw) && work[pw].degree == 0 && !terminal(pw))) {
      return Transition::kZeroSink;
    }
    const std::uint32_t unproc = work[pv].unproc + work[pw].unproc - 2;
    if (unproc == 0 && term > 0) return Transition::kZeroSink;

    const VertexId merged = std::min(cv, cw);
    for (FrontierSlot& slot : work) {
      if (slot.comp == cv || slot.comp == cw) {
        slot.comp = merged;
        slot.unproc = unproc;
        slot.term = term;
      }
    }
    ++work[pv].degree;
    ++work[pw].degree;
    child_cost = parent_cost + s.cost;
  } else {
    for (std::size_t j : {pv, pw}) {
      if (s.parent_slot[j] < 0 && leaves(j) && terminal(j)) {
        return Transition::kZeroSink;  // isolated terminal
      }
    }
    for (VertexId c : {cv, cw}) {
      for (FrontierSlot& slot : work) {
        if (slot.comp == c) --slot.unproc;
      }
    }
    for (std::size_t j : {pv, pw}) {
      if (work[j].unproc == 0 && work[j].term > 0) return Transition::kZeroSink;
      if (leaves(j) && work[j].degree == 1 && !terminal(j)) {
        return Transition::kZeroSink;
      }
    }
    child_cost = parent_cost;
  }

  // The last frontier is empty: whatever was not accepted above is rejected.
  if (step == steps_.size()) return Transition::kZeroSink;

  child.clear();
  for (std::size_t j = 0; j < n; ++j) {
    if (s.stays[j]) child.push_back(work[j]);
  }
  // Relabel components by their smallest surviving member; the frontier is
  // ascending so that is the first occurrence of each label.
  thread_local std::vector<std::pair<VertexId, VertexId>> relabel;
  relabel.clear();
  const auto frontier = order_->frontier(step);
  for (std::size_t p = 0; p < child.size(); ++p) {
    const VertexId old = child[p].comp;
    auto it = std::find_if(relabel.begin(), relabel.end(),
                           [old](const auto& r) { return r.first == old; });
    if (it == relabel.end()) {
      relabel.emplace_back(old, frontier[p]);
      child[p].comp = frontier[p];
    } else {
      child[p].comp = it->second;
    }
  }
  return Transition::kNode;
}

bool FrontierSearch::is_one_sink(const NodeInfo& parent, std::size_t step,
                                 int branch) const {
  std::vector<FrontierSlot> child;
  Cost cost = 0;
  return transition(parent.slots, parent.cost, step, branch, child, cost) ==
         Transition::kOneSink;
}

bool FrontierSearch::is_zero_sink(const NodeInfo& parent, std::size_t step,
                                  int branch) const {
  std::vector<FrontierSlot> child;
  Cost cost = 0;
  return transition(parent.slots, parent.cost, step, branch, child, cost) ==
         Transition::kZeroSink;
}

NodeInfo FrontierSearch::generate_node(const NodeInfo& parent, std::size_t step,
                                       int branch) const {
  NodeInfo child;
  if (transition(parent.slots, parent.cost, step, branch, child.slots,
                 child.cost) != Transition::kNode) {
    throw std::logic_error("generate_node called on a sink branch");
  }
  return child;
}

MergeKey FrontierSearch::merge_key(const NodeInfo& info,
                                   std::size_t level) const {
  if (info.slots.size() != order_->frontier(level - 1).size()) {
    throw std::logic_error("node info does not match the frontier of its level");
  }
  MergeKey key;
  key.words.reserve(info.slots.size() * 3);
  for (const FrontierSlot& s : info.slots) {
    key.words.push_back(s.comp);
    key.words.push_back(s.term > 0 ? 1 : 0);
    key.words.push_back(s.degree);
  }
  return key;
}

void FrontierSearch::merge_node(NodeInfo& into, const NodeInfo& other) {
  assert(same_merge_class(into.slots, other.slots));
  into.cost = std::min(into.cost, other.cost);
}

Bdd construct(const Graph& g, const EdgeOrder& order, Cost theta,
              const ConstructOptions& options) {
  if (g.terminal_count() < 2) {
    throw TerminalCountError("enumeration needs at least two terminals, got " +
                             std::to_string(g.terminal_count()));
  }
  const std::size_t m = order.size();
  std::vector<EdgeId> level_edges(order.permutation().begin(),
                                  order.permutation().end());
  std::vector<Cost> level_costs;
  for (EdgeId e : level_edges) level_costs.push_back(g.edge(e).cost);
  if (m == 0) {
    return Bdd(std::move(level_edges), std::move(level_costs), {}, kZeroSink,
               g.terminal_count());
  }

  FrontierSearch search(g, order, theta);
  std::vector<BddNode> nodes{{1, kZeroSink, kZeroSink, 0}};
  std::vector<NodeInfo> infos;
  if (options.keep_infos) infos.push_back(search.root_info());

  std::vector<FrontierSlot> prev_slots;
  std::vector<Cost> prev_costs{0};
  std::vector<FrontierSlot> cur_slots;
  std::vector<Cost> cur_costs;
  std::vector<std::size_t> widths;
  std::vector<FrontierSlot> child;
  NodeId parent_base = 2;

  for (std::size_t step = 1; step <= m; ++step) {
    const std::size_t wp = order.frontier(step - 1).size();
    const std::size_t wc = order.frontier(step).size();
    cur_slots.clear();
    cur_costs.clear();

    auto slots_of = [&](std::uint32_t idx) {
      return std::span<const FrontierSlot>(cur_slots.data() + idx * wc, wc);
    };
    auto hash = [&](std::uint32_t idx) { return merge_class_hash(slots_of(idx)); };
    auto equal = [&](std::uint32_t a, std::uint32_t b) {
      return same_merge_class(slots_of(a), slots_of(b));
    };
    std::unordered_set<std::uint32_t, decltype(hash), decltype(equal)> table(
        prev_costs.size() * 2 + 1, hash, equal);

    const NodeId child_base = static_cast<NodeId>(nodes.size() + 2);
    for (std::size_t k = 0; k < prev_costs.size(); ++k) {
      const NodeId parent = parent_base + static_cast<NodeId>(k);
      std::span<const FrontierSlot> parent_slots(prev_slots.data() + k * wp, wp);
      for (int branch = 0; branch <= 1; ++branch) {
        Cost cost = 0;
        NodeId target = kZeroSink;
        switch (search.transition(parent_slots, prev_costs[k], step, branch,
                                  child, cost)) {
          case Transition::kZeroSink:
            target = kZeroSink;
            break;
          case Transition::kOneSink:
            target = kOneSink;
            break;
          case Transition::kNode: {
            auto idx = static_cast<std::uint32_t>(cur_costs.size());
            cur_slots.insert(cur_slots.end(), child.begin(), child.end());
            cur_costs.push_back(cost);
            bool fresh = true;
            if (options.merge) {
              auto [it, inserted] = table.insert(idx);
              if (!inserted) {
                cur_costs[*it] = std::min(cur_costs[*it], cost);
                cur_slots.resize(idx * wc);
                cur_costs.pop_back();
                idx = *it;
                fresh = false;
              }
            }
            if (fresh) {
              nodes.push_back({static_cast<std::uint32_t>(step + 1), kZeroSink,
                               kZeroSink, cost});
              if (options.keep_infos) infos.push_back({child, cost});
            }
            target = child_base + idx;
            break;
          }
        }
        BddNode& p = nodes[parent - 2];
        (branch ? p.hi : p.lo) = target;
      }
    }
    for (std::size_t idx = 0; idx < cur_costs.size(); ++idx) {
      nodes[child_base - 2 + idx].cost = cur_costs[idx];
      if (options.keep_infos) infos[child_base - 2 + idx].cost = cur_costs[idx];
    }
    widths.push_back(cur_costs.size());
    if (nodes.size() > options.node_cap) {
      std::ostringstream msg;
      msg << "BDD node cap " << options.node_cap << " exceeded at level "
          << step + 1 << " of " << m << " (" << nodes.size()
          << " nodes); layer widths:";
      for (std::size_t i = 0; i < widths.size(); ++i) {
        msg << " " << widths[i];
      }
      throw CapacityError(msg.str());
    }
    parent_base = child_base;
    std::swap(prev_slots, cur_slots);
    std::swap(prev_costs, cur_costs);
  }
  assert(prev_costs.empty());

  return Bdd(std::move(level_edges), std::move(level_costs), std::move(nodes),
             2, g.terminal_count(), std::move(infos));
}

}  // namespace steiner
