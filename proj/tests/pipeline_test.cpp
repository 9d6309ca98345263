#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "steiner/oracle.hpp"
#include "steiner/pipeline.hpp"
#include "support/random_graphs.hpp"

namespace steiner {
namespace {

using testing::run_command;

const std::string kCli = STEINER_CLI_PATH;
const std::string kTri = std::string(STEINER_DATA_DIR) + "/tri.stp";

std::string jsonl(const Graph& g, const std::vector<SteinerTree>& trees) {
  std::ostringstream out;
  write_trees_jsonl(out, g, trees);
  return out.str();
}

RunConfig exact_config() {
  RunConfig cfg;
  cfg.theta = std::numeric_limits<double>::infinity();
  cfg.use_seeds = false;
  cfg.use_simplify = false;
  cfg.k = 1'000'000;
  cfg.cap = std::size_t{1} << 40;
  return cfg;
}

TEST(Pipeline, TriangleJsonl) {
  Graph g = testing::triangle();
  RunConfig cfg;
  cfg.theta = 3;
  cfg.k = 10;
  PipelineResult r = run_enumeration(g, cfg);
  EXPECT_EQ(jsonl(g, r.trees),
            "{\"cost\":2,\"edges\":[[1,2],[2,3]]}\n"
            "{\"cost\":3,\"edges\":[[1,3]]}\n");
  EXPECT_EQ(r.report.tree_count, 2u);
  EXPECT_EQ(r.report.min_cost, 2);
}

TEST(Pipeline, ExactMatchesOracle) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    Graph g = testing::random_connected_graph(rng);
    EXPECT_EQ(run_enumeration(g, exact_config()).trees,
              brute_force_minimal_steiner(g, kInfiniteCost).trees);
  }
}

TEST(Pipeline, SimplifiedMatchesDirect) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 50; ++i) {
    Graph g = testing::random_graph_with_degree2(rng);
    RunConfig cfg = exact_config();
    cfg.use_simplify = true;
    EXPECT_EQ(run_enumeration(g, cfg).trees, run_enumeration(g, exact_config()).trees);
  }
}

TEST(Pipeline, SeededRunIsSubsetOfExact) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 50; ++i) {
    Graph g = testing::random_connected_graph(rng);
    RunConfig cfg;
    cfg.seeds.perturb_fraction = 0.2;
    PipelineResult r = run_enumeration(g, cfg);
    ASSERT_FALSE(r.trees.empty());
    auto all = testing::edge_sets(brute_force_minimal_steiner(g, kInfiniteCost).trees);
    for (const SteinerTree& t : r.trees) {
      EXPECT_TRUE(all.contains(t.edges));
      EXPECT_LE(t.cost, r.report.theta);
    }
    EXPECT_LE(r.trees.front().cost, r.report.best_seed_cost);
  }
}

TEST(Pipeline, ThetaRatioUsesBestSeed) {
  Graph g = testing::triangle();
  RunConfig cfg;
  cfg.theta_ratio = 1.5;
  PipelineResult r = run_enumeration(g, cfg);
  EXPECT_EQ(r.report.best_seed_cost, 2);
  EXPECT_EQ(r.report.theta, 3);
  EXPECT_EQ(r.trees.size(), 2u);
}

TEST(Pipeline, DecimalThetaIsScaled) {
  Graph g = parse_stp_string(
      "SECTION Graph\nNodes 3\nEdges 3\nE 1 2 0.5\nE 2 3 0.5\nE 1 3 1.5\nEND\n"
      "SECTION Terminals\nTerminals 2\nT 1\nT 3\nEND\nEOF\n");
  RunConfig cfg = exact_config();
  cfg.theta = 1.0;
  PipelineResult r = run_enumeration(g, cfg);
  ASSERT_EQ(r.trees.size(), 1u);
  EXPECT_EQ(r.trees[0].cost, 10);
  EXPECT_EQ(r.report.cost_scale, 10);
}

TEST(Pipeline, NeedsTwoTerminals) {
  Graph g(2, {{1, 2, 1}}, {1});
  EXPECT_THROW(run_enumeration(g, RunConfig{}), TerminalCountError);
}

TEST(Pipeline, Deterministic) {
  std::mt19937_64 rng(64);
  for (int i = 0; i < 10; ++i) {
    Graph g = testing::random_connected_graph(rng);
    RunConfig cfg;
    cfg.seeds.perturb_fraction = 0.3;
    cfg.seeds.rng_seed = 1234;
    EXPECT_EQ(jsonl(g, run_enumeration(g, cfg).trees), jsonl(g, run_enumeration(g, cfg).trees));
  }
}

TEST(Jsonl, RoundTripWithParallelEdges) {
  Graph g(3, {{1, 2, 4}, {1, 2, 1}, {2, 3, 1}, {1, 3, 9}}, {1, 3});
  auto trees = brute_force_minimal_steiner(g, kInfiniteCost).trees;
  std::istringstream in(jsonl(g, trees));
  auto back = read_trees_jsonl(in, g);
  // A pair (1,2) resolves to the cheaper parallel edge.
  EXPECT_EQ(back.front(), trees.front());
  EXPECT_EQ(back.front().edges, (std::vector<EdgeId>{1, 2}));
}

TEST(Jsonl, UnknownEdgeIsError) {
  Graph g = testing::triangle();
  std::istringstream in("{\"cost\":1,\"edges\":[[1,1]]}\n");
  EXPECT_THROW(read_trees_jsonl(in, g), ParseError);
}

TEST(Report, JsonKeys) {
  Graph g = testing::triangle();
  PipelineResult r = run_enumeration(g, RunConfig{});
  std::ostringstream out;
  write_report_json(out, r.report);
  for (const char* key : {"\"graph\"", "\"preprocessed\"", "\"bdd\"", "\"nodes_reduced\"",
                          "\"timing_ms\"", "\"construct\"", "\"traverse\"", "\"trees\"",
                          "\"min_cost\"", "\"avg_cost\""}) {
    EXPECT_NE(out.str().find(key), std::string::npos) << key;
  }
}

TEST(Cli, EnumerateTriangle) {
  auto r = run_command(kCli + " enumerate --input " + kTri + " --theta 3 --k 10 2>/dev/null");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "{\"cost\":2,\"edges\":[[1,2],[2,3]]}\n"
            "{\"cost\":3,\"edges\":[[1,3]]}\n");
}

TEST(Cli, CountTriangle) {
  auto r = run_command(kCli + " count --input " + kTri + " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, OracleMatchesEnumerate) {
  auto a = run_command(kCli + " oracle --input " + kTri + " --theta 3 2>/dev/null");
  auto b = run_command(kCli + " enumerate --input " + kTri + " --theta 3 --k 10 2>/dev/null");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExactEnumerateMatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(65);
  for (int i = 0; i < 8; ++i) {
    Graph g = testing::random_connected_graph(rng);
    std::string path = testing::write_temp_stp(g, "cli_exact");
    auto a = run_command(kCli + " oracle --input " + path + " 2>/dev/null");
    auto b = run_command(kCli + " enumerate --exact --theta inf --k 1000000 --input " + path +
                         " 2>/dev/null");
    EXPECT_EQ(a.out, b.out);
    std::filesystem::remove(path);
  }
}

TEST(Cli, ParseFailureExitCode) {
  std::string path = (std::filesystem::temp_directory_path() / "cli_bad.stp").string();
  {
    std::ofstream out(path);
    out << "SECTION Graph\nNodes 3\nEdges 1\nE 1 4 1\nEND\nEOF\n";
  }
  auto r = run_command(kCli + " enumerate --input " + path + " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 3);
  std::filesystem::remove(path);
}

TEST(Cli, InfeasibleThetaExitCode) {
  auto r = run_command(kCli + " enumerate --input " + kTri + " --theta 1 2>/dev/null");
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MemoryCapExitCode) {
  auto r = run_command(kCli + " enumerate --exact --input " + kTri +
                       " --theta inf --node-cap 1 2>/dev/null");
  EXPECT_EQ(r.exit_code, 5);
}

TEST(Cli, TruncationExitCode) {
  std::string path = testing::write_temp_stp(testing::grid_graph(3, 3), "cli_grid");
  auto r = run_command(kCli + " enumerate --exact --theta inf --k 5 --cap 2 --input " + path +
                       " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 6);
  std::filesystem::remove(path);
}

TEST(Cli, SubcommandsRun) {
  for (const char* sub : {"stats", "simplify", "seeds", "build"}) {
    auto r = run_command(kCli + " " + sub + " --input " + kTri + " 2>/dev/null");
    EXPECT_EQ(r.exit_code, 0) << sub;
    EXPECT_FALSE(r.out.empty()) << sub;
  }
}

TEST(Cli, SeedsFromFile) {
  std::string seeds = (std::filesystem::temp_directory_path() / "cli_seeds.jsonl").string();
  {
    std::ofstream out(seeds);
    out << "{\"cost\":3,\"edges\":[[1,3]]}\n";
  }
  auto r = run_command(kCli + " enumerate --theta inf --input " + kTri + " --seeds-from " +
                       seeds + " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "{\"cost\":3,\"edges\":[[1,3]]}\n");
  std::filesystem::remove(seeds);
}

TEST(Cli, BuildDumpsReducedBdd) {
  auto r = run_command(kCli + " build --exact --theta inf --input " + kTri + " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "bdd 4 3");
}

}  // namespace
}  // namespace steiner
