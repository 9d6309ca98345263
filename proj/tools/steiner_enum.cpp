// Command-line front end: steiner_enum <subcommand> --input file.stp [...]

#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "steiner/bdd.hpp"
#include "steiner/bdd_ops.hpp"
#include "steiner/frontier.hpp"
#include "steiner/graph.hpp"
#include "steiner/oracle.hpp"
#include "steiner/pipeline.hpp"
#include "steiner/seeds.hpp"

namespace {

using namespace steiner;

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kParseFailure = 3,
  kInfeasible = 4,
  kCapacity = 5,
  kTruncated = 6,
  kBadTerminals = 7,
};

struct Options {
  std::string input;
  std::string output;
  std::string report;
  std::string dump_bdd;
  std::string seeds_from;
  std::string seed_root = "min-degree";
  std::string theta;
  std::optional<double> theta_ratio;
  bool exact = false;
  bool no_seeds = false;
  bool no_simplify = false;
  bool no_reduce = false;
  bool parallel = false;
  std::string map_output;
  RunConfig run;
};

std::optional<double> parse_theta(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size() || v < 0) throw CLI::ValidationError("--theta", "expected a non-negative number or 'inf'");
  return v;
}

// Output stream for `path`, or stdout when empty / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_input(CLI::App* sub, Options& o) {
  sub->add_option("-i,--input", o.input, "SteinLib STP file")->required();
}

void add_theta(CLI::App* sub, Options& o, bool ratio) {
  auto* theta = sub->add_option("--theta", o.theta,
                                "absolute cost bound (input units, or 'inf')");
  if (ratio) {
    sub->add_option("--theta-ratio", o.theta_ratio,
                    "bound as a multiple of the cheapest seed tree cost "
                    "(an upper bound on the optimum), default 1.2")
        ->excludes(theta);
  }
}

void add_seed_options(CLI::App* sub, Options& o) {
  sub->add_option("--seeds", o.run.seeds.num_seeds, "number of ToSP seed trees")
      ->check(CLI::PositiveNumber);
  sub->add_option("--perturb", o.run.seeds.perturb_fraction,
                  "fraction of edges deleted between seed runs")
      ->check(CLI::Range(0.0, 0.999999));
  sub->add_option("--rng-seed", o.run.seeds.rng_seed, "perturbation RNG seed");
  sub->add_option("--seed-root", o.seed_root, "ToSP root: min-degree or a vertex id");
}

void add_pipeline_options(CLI::App* sub, Options& o) {
  add_seed_options(sub, o);
  sub->add_option("--seeds-from", o.seeds_from,
                  "JSONL trees used as seeds instead of ToSP");
  sub->add_flag("--no-seeds", o.no_seeds, "build on the whole graph");
  sub->add_flag("--no-simplify", o.no_simplify, "skip degree-2 contraction");
  sub->add_flag("--exact", o.exact, "same as --no-seeds --no-simplify");
  sub->add_option("--node-cap", o.run.node_cap, "abort construction above this many nodes");
  sub->add_flag("--parallel", o.parallel, "OpenMP reduce/traversal kernels");
}

void finish_config(Options& o, const Graph& g) {
  RunConfig& r = o.run;
  r.theta = parse_theta(o.theta);
  if (o.theta_ratio) r.theta_ratio = *o.theta_ratio;
  r.use_seeds = !(o.exact || o.no_seeds);
  r.use_simplify = !(o.exact || o.no_simplify);
  r.exec = o.parallel ? Execution::kParallel : Execution::kSerial;
  if (o.seed_root != "min-degree") {
    r.seeds.root = static_cast<VertexId>(std::stoul(o.seed_root));
  }
  if (!o.seeds_from.empty() && r.use_seeds) {
    std::ifstream in(o.seeds_from);
    if (!in) throw std::runtime_error("cannot open " + o.seeds_from);
    r.external_seeds = read_trees_jsonl(in, g);
  }
}

int cmd_stats(Options& o) {
  Graph g = load_stp(o.input);
  EdgeOrder order = order_edges(g);
  Simplified s = simplify(g);
  std::size_t deg2 = 0;
  std::size_t max_degree = 0;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    if (g.degree(v) == 2 && !g.is_terminal(v)) ++deg2;
    max_degree = std::max(max_degree, g.degree(v));
  }
  std::cout << "vertices " << g.vertex_count() << "\n"
            << "edges " << g.edge_count() << "\n"
            << "terminals " << g.terminal_count() << "\n"
            << "max_degree " << max_degree << "\n"
            << "degree2_nonterminals " << deg2 << "\n"
            << "bfs_start " << min_degree_terminal(g) << "\n"
            << "frontier_width " << order.frontier_width() << "\n"
            << "simplified_edges " << s.graph.edge_count() << "\n"
            << "removed_loops " << s.map.removed_loops.size() << "\n"
            << "cost_scale " << g.cost_scale() << "\n";
  return kOk;
}

int cmd_simplify(Options& o) {
  Graph g = load_stp(o.input);
  Simplified s = simplify(g);
  Output out(o.output);
  write_stp(out.stream(), s.graph);
  if (!o.map_output.empty()) {
    Output map(o.map_output);
    for (std::size_t e = 0; e < s.map.replacements.size(); ++e) {
      map.stream() << e;
      for (EdgeId orig : s.map.replacements[e]) map.stream() << " " << orig;
      map.stream() << "\n";
    }
  }
  std::cerr << "simplify: |E| " << g.edge_count() << " -> " << s.graph.edge_count()
            << ", loops removed " << s.map.removed_loops.size() << "\n";
  return kOk;
}

int cmd_seeds(Options& o) {
  Graph g = load_stp(o.input);
  finish_config(o, g);
  SeedResult seeds = select_seeds(g, o.run.seeds);
  Output out(o.output);
  write_trees_jsonl(out.stream(), g, seeds.trees);
  std::cerr << "seeds: " << seeds.trees.size() << " trees"
            << (seeds.shortfall ? " (fewer than requested)" : "")
            << ", union |E|=" << seeds.subgraph.graph.edge_count() << " of "
            << g.edge_count() << ", attempts " << seeds.attempts << "\n";
  return kOk;
}

int cmd_build(Options& o) {
  Graph g = load_stp(o.input);
  finish_config(o, g);
  Preprocessed pre = preprocess(g, o.run);
  Cost theta = resolve_theta(g, o.run, pre.seeds);
  EdgeOrder order = order_edges(pre.graph(), o.run.order);
  ConstructOptions copts;
  copts.node_cap = o.run.node_cap;
  Bdd bdd = construct(pre.graph(), order, theta, copts);
  Bdd reduced = reduce(bdd, o.run.exec);
  Output out(o.dump_bdd);
  dump_bdd(out.stream(), o.no_reduce ? bdd : reduced);
  std::cerr << "build: |E|=" << pre.graph().edge_count() << " nodes=" << bdd.node_count()
            << " reduced=" << reduced.node_count()
            << " frontier_width=" << order.frontier_width() << "\n";
  return kOk;
}

int cmd_enumerate(Options& o) {
  Graph g = load_stp(o.input);
  finish_config(o, g);
  PipelineResult result = run_enumeration(g, o.run);
  {
    Output out(o.output);
    write_trees_jsonl(out.stream(), g, result.trees);
  }
  write_summary(std::cerr, result.report);
  if (!o.dump_bdd.empty() && result.bdd) {
    Output dump(o.dump_bdd);
    dump_bdd(dump.stream(), *result.bdd);
  }
  if (!o.report.empty()) {
    Output rep(o.report);
    write_report_json(rep.stream(), result.report);
  }
  if (result.trees.empty()) return kInfeasible;
  if (result.report.traversal.truncated) {
    std::cerr << "warning: output truncated at " << result.trees.size()
              << " trees; raise --cap\n";
    return kTruncated;
  }
  return kOk;
}

int cmd_count(Options& o) {
  Graph g = load_stp(o.input);
  auto theta = parse_theta(o.theta);
  Cost bound = kInfiniteCost;
  if (theta && std::isfinite(*theta)) {
    bound = static_cast<Cost>(*theta * static_cast<double>(g.cost_scale()) + 1e-9);
  }
  Graph work = o.no_simplify ? g : simplify(g).graph;
  Bdd bdd = reduce(construct(work, order_edges(work), bound, {.node_cap = o.run.node_cap}),
                   o.parallel ? Execution::kParallel : Execution::kSerial);
  std::cout << count_trees(bdd).str() << "\n";
  if (bound != kInfiniteCost) {
    std::cerr << "note: with a finite theta the count may include trees above theta\n";
  }
  return kOk;
}

int cmd_oracle(Options& o) {
  Graph g = load_stp(o.input);
  auto theta = parse_theta(o.theta);
  Cost bound = kInfiniteCost;
  if (theta && std::isfinite(*theta)) {
    bound = static_cast<Cost>(*theta * static_cast<double>(g.cost_scale()) + 1e-9);
  }
  OracleResult r = brute_force_minimal_steiner(
      g, bound, o.parallel ? Execution::kParallel : Execution::kSerial);
  Output out(o.output);
  write_trees_jsonl(out.stream(), g, r.trees);
  std::cerr << "oracle: " << r.trees.size() << " trees in "
            << std::chrono::duration<double, std::milli>(r.elapsed).count() << " ms\n";
  return r.trees.empty() ? kInfeasible : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate minimal Steiner trees with cost at most theta via a "
               "frontier-based BDD."};
  app.require_subcommand(1);
  Options o;

  auto* stats = app.add_subcommand("stats", "graph statistics");
  add_input(stats, o);

  auto* simp = app.add_subcommand("simplify", "contract degree-2 non-terminals, drop loops");
  add_input(simp, o);
  simp->add_option("-o,--output", o.output, "simplified STP (default stdout)");
  simp->add_option("--map", o.map_output, "edge expansion map: '<new> <orig>...' per line");

  auto* seeds = app.add_subcommand("seeds", "ToSP seed trees as JSONL");
  add_input(seeds, o);
  add_seed_options(seeds, o);
  seeds->add_option("-o,--output", o.output, "JSONL output (default stdout)");

  auto* build = app.add_subcommand("build", "construct, reduce and dump the BDD");
  add_input(build, o);
  add_theta(build, o, true);
  add_pipeline_options(build, o);
  build->add_option("--dump-bdd,-o,--output", o.dump_bdd, "BDD dump (default stdout)");
  build->add_flag("--no-reduce", o.no_reduce, "dump the unreduced BDD");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "top-k trees as JSONL");
  add_input(enumerate_cmd, o);
  add_theta(enumerate_cmd, o, true);
  add_pipeline_options(enumerate_cmd, o);
  enumerate_cmd->add_option("-k,--k", o.run.k, "cheapest partial costs kept per node")
      ->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--cap", o.run.cap, "max trees emitted (default 10*k)");
  enumerate_cmd->add_option("--entry-budget", o.run.entry_budget,
                            "abort traversal above this many cost entries");
  enumerate_cmd->add_option("-o,--output", o.output, "JSONL output (default stdout)");
  enumerate_cmd->add_option("--report", o.report, "JSON run report");
  enumerate_cmd->add_option("--dump-bdd", o.dump_bdd, "reduced BDD dump");

  auto* count = app.add_subcommand("count", "number of trees in the BDD of the whole graph");
  add_input(count, o);
  add_theta(count, o, false);
  count->add_flag("--no-simplify", o.no_simplify, "skip degree-2 contraction");
  count->add_option("--node-cap", o.run.node_cap, "abort construction above this many nodes");
  count->add_flag("--parallel", o.parallel, "OpenMP kernels");

  auto* oracle = app.add_subcommand("oracle", "brute-force enumeration (<= 24 edges)");
  add_input(oracle, o);
  add_theta(oracle, o, false);
  oracle->add_option("-o,--output", o.output, "JSONL output (default stdout)");
  oracle->add_flag("--parallel", o.parallel, "OpenMP subset sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return cmd_stats(o);
    if (simp->parsed()) return cmd_simplify(o);
    if (seeds->parsed()) return cmd_seeds(o);
    if (build->parsed()) return cmd_build(o);
    if (enumerate_cmd->parsed()) return cmd_enumerate(o);
    if (count->parsed()) return cmd_count(o);
    if (oracle->parsed()) return cmd_oracle(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const GraphError& e) {
    std::cerr << "invalid graph: " << e.what() << "\n";
    return kParseFailure;
  } catch (const TerminalCountError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadTerminals;
  } catch (const CapacityError& e) {
    std::cerr << "memory cap: " << e.what() << "\n";
    return kCapacity;
  } catch (const EnumerationError& e) {
    std::cerr << "memory cap: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::bad_alloc&) {
    std::cerr << "memory cap: out of memory\n";
    return kCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
