#include "steiner/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "json.hpp"
#include "steiner/frontier.hpp"

namespace steiner {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t used_vertices(const Graph& g) {
  std::size_t n = 0;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    if (g.degree(v) > 0) ++n;
  }
  return n;
}

Cost scaled_floor(long double value) {
  if (!std::isfinite(static_cast<double>(value)) ||
      value >= static_cast<long double>(kInfiniteCost)) {
    return kInfiniteCost;
  }
  if (value < 0) return -1;
  return static_cast<Cost>(std::floor(value + 1e-9L));
}

}  // namespace

SteinerTree Preprocessed::to_input(const SteinerTree& t) const {
  return lift_tree(expand_tree(t, simplified.map), subgraph.parent_edge);
}

Preprocessed preprocess(const Graph& g, const RunConfig& cfg) {
  Preprocessed p;
  if (cfg.use_seeds) {
    SeedResult seeds = cfg.external_seeds.empty()
                           ? select_seeds(g, cfg.seeds)
                           : seeds_from_trees(g, cfg.external_seeds);
    p.subgraph = std::move(seeds.subgraph);
    p.seeds = std::move(seeds.trees);
    p.seed_shortfall = seeds.shortfall;
  } else {
    std::vector<EdgeId> all(g.edge_count());
    std::iota(all.begin(), all.end(), EdgeId{0});
    p.subgraph = edge_subgraph(g, all);
  }
  if (cfg.use_simplify) {
    p.simplified = simplify(p.subgraph.graph);
  } else {
    SimplificationMap identity;
    for (EdgeId e = 0; e < p.subgraph.graph.edge_count(); ++e) {
      identity.replacements.push_back({e});
    }
    p.simplified = {p.subgraph.graph, std::move(identity)};
  }
  return p;
}

Cost resolve_theta(const Graph& g, const RunConfig& cfg,
                   const std::vector<SteinerTree>& seeds) {
  if (cfg.theta) {
    return scaled_floor(static_cast<long double>(*cfg.theta) *
                        static_cast<long double>(g.cost_scale()));
  }
  Cost best = kInfiniteCost;
  for (const SteinerTree& t : seeds) best = std::min(best, t.cost);
  if (best == kInfiniteCost) {
    VertexId root = cfg.seeds.root.value_or(min_degree_terminal(g));
    best = tosp_tree(g, root).cost;
  }
  return scaled_floor(static_cast<long double>(cfg.theta_ratio) *
                      static_cast<long double>(best));
}

PipelineResult run_enumeration(const Graph& g, const RunConfig& cfg) {
  if (g.terminal_count() < 2) {
    throw TerminalCountError("enumeration needs at least two terminals, got " +
                             std::to_string(g.terminal_count()));
  }
  PipelineResult out;
  PipelineReport& r = out.report;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  r.terminals = g.terminal_count();
  r.cost_scale = g.cost_scale();

  Preprocessed pre = preprocess(g, cfg);
  const Graph& work = pre.graph();
  r.pre_vertices = used_vertices(work);
  r.pre_edges = work.edge_count();
  r.seed_trees = pre.seeds.size();
  r.seed_shortfall = pre.seed_shortfall;
  for (const SteinerTree& t : pre.seeds) {
    if (r.best_seed_cost < 0 || t.cost < r.best_seed_cost) r.best_seed_cost = t.cost;
  }
  r.theta = resolve_theta(g, cfg, pre.seeds);
  if (r.theta < 0) return out;

  EdgeOrder order = order_edges(work, cfg.order);
  r.frontier_width = order.frontier_width();

  auto t0 = Clock::now();
  ConstructOptions copts;
  copts.node_cap = cfg.node_cap;
  Bdd bdd = construct(work, order, r.theta, copts);
  r.construct_ms = ms_since(t0);
  r.bdd_nodes = bdd.node_count();

  t0 = Clock::now();
  Bdd reduced = reduce(bdd, cfg.exec);
  r.reduce_ms = ms_since(t0);
  r.bdd_nodes_reduced = reduced.node_count();
  r.max_layer_width = reduced.max_layer_width();

  t0 = Clock::now();
  EnumerateOptions eopts;
  eopts.k = cfg.k;
  eopts.theta = r.theta;
  eopts.cap = cfg.cap;
  eopts.entry_budget = cfg.entry_budget;
  eopts.exec = cfg.exec;
  EnumerateResult enumerated = enumerate(reduced, work, eopts);
  r.traverse_ms = ms_since(t0);
  r.traversal = enumerated.stats;
  out.bdd = std::move(reduced);

  out.trees.reserve(enumerated.trees.size());
  for (const SteinerTree& t : enumerated.trees) out.trees.push_back(pre.to_input(t));
  std::sort(out.trees.begin(), out.trees.end());

  r.tree_count = out.trees.size();
  if (!out.trees.empty()) {
    r.min_cost = out.trees.front().cost;
    long double sum = 0;
    for (const SteinerTree& t : out.trees) sum += static_cast<long double>(t.cost);
    r.avg_cost = static_cast<double>(sum / static_cast<long double>(out.trees.size()));
  }
  return out;
}

void write_trees_jsonl(std::ostream& out, const Graph& g,
                       const std::vector<SteinerTree>& trees) {
  for (const SteinerTree& t : trees) {
    nlohmann::ordered_json line;
    line["cost"] = t.cost;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (EdgeId e : t.edges) edges.push_back({g.edge(e).u, g.edge(e).v});
    line["edges"] = std::move(edges);
    out << line.dump() << "\n";
  }
}

std::vector<SteinerTree> read_trees_jsonl(std::istream& in, const Graph& g) {
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> by_endpoints;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = std::minmax(g.edge(e).u, g.edge(e).v);
    by_endpoints[{u, v}].push_back(e);
  }
  for (auto& [key, ids] : by_endpoints) {
    std::stable_sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) {
      return g.edge(a).cost < g.edge(b).cost;
    });
  }

  std::vector<SteinerTree> trees;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (!j.contains("edges") || !j["edges"].is_array()) {
      throw ParseError(line_no, "tree line without an edges array");
    }
    std::vector<EdgeId> edges;
    std::map<std::pair<VertexId, VertexId>, std::size_t> used;
    for (const auto& pair : j["edges"]) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError(line_no, "edge must be a [u, v] pair");
      }
      const auto a = pair[0].get<VertexId>();
      const auto b = pair[1].get<VertexId>();
      const auto [u, v] = std::minmax(a, b);
      auto it = by_endpoints.find({u, v});
      std::size_t& n = used[{u, v}];
      if (it == by_endpoints.end() || n >= it->second.size()) {
        throw ParseError(line_no, "no edge joins " + std::to_string(u) + " and " +
                                      std::to_string(v));
      }
      edges.push_back(it->second[n++]);
    }
    trees.push_back(make_tree(g, std::move(edges)));
  }
  return trees;
}

void write_summary(std::ostream& out, const PipelineReport& r) {
  out << "graph: |V|=" << r.vertices << " |E|=" << r.edges
      << " |T|=" << r.terminals << "\n";
  out << "preprocessed: |V|=" << r.pre_vertices << " |E|=" << r.pre_edges
      << " seeds=" << r.seed_trees << (r.seed_shortfall ? " (shortfall)" : "")
      << " frontier_width=" << r.frontier_width << "\n";
  out << "theta: "
      << (r.theta == kInfiniteCost ? std::string("inf") : std::to_string(r.theta))
      << "\n";
  out << "bdd: nodes=" << r.bdd_nodes << " reduced=" << r.bdd_nodes_reduced
      << " max_layer_width=" << r.max_layer_width << "\n";
  out << "time_ms: construct=" << r.construct_ms << " reduce=" << r.reduce_ms
      << " traverse=" << r.traverse_ms << "\n";
  out << "trees: count=" << r.tree_count;
  if (r.tree_count > 0) out << " min_cost=" << r.min_cost << " avg_cost=" << r.avg_cost;
  out << " peak_entries=" << r.traversal.peak_live_entries
      << (r.traversal.truncated ? " (truncated)" : "") << "\n";
}

void write_report_json(std::ostream& out, const PipelineReport& r) {
  nlohmann::ordered_json j;
  j["graph"] = {{"v", r.vertices}, {"e", r.edges}, {"t", r.terminals}};
  j["preprocessed"] = {{"v", r.pre_vertices}, {"e", r.pre_edges}};
  j["bdd"] = {{"nodes", r.bdd_nodes}, {"nodes_reduced", r.bdd_nodes_reduced}};
  j["timing_ms"] = {{"construct", r.construct_ms},
                    {"reduce", r.reduce_ms},
                    {"traverse", r.traverse_ms}};
  nlohmann::ordered_json trees = {{"count", r.tree_count}};
  if (r.tree_count > 0) {
    trees["min_cost"] = r.min_cost;
    trees["avg_cost"] = r.avg_cost;
  } else {
    trees["min_cost"] = nullptr;
    trees["avg_cost"] = nullptr;
  }
  j["trees"] = std::move(trees);
  j["theta"] = r.theta == kInfiniteCost ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(r.theta);
  j["cost_scale"] = r.cost_scale;
  j["peak_entries"] = r.traversal.peak_live_entries;
  j["truncated"] = r.traversal.truncated;
  out << j.dump(2) << "\n";
}

}  // namespace steiner
