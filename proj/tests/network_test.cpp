#include "sspat/network.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

namespace sspat {
namespace {

PatternMatrix P(std::initializer_list<const char*> rows) {
  return pattern_from_rows(std::vector<std::string>(rows.begin(), rows.end()));
}

GraphParseResult load_fixture(const std::string& name) {
  std::ifstream in(std::string(SSPAT_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return parse_graph(in);
}

NetworkProblem nine_vertex() {
  auto g = load_fixture("nine_vertex.graph");
  return {g.graph, parse_vertex_list("1,2", 9), parse_vertex_list("1-7", 9)};
}

TEST(NetworkTest, QualitativePattern) {
  DirectedGraph g{3, {}};
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  EXPECT_EQ(qualitative_pattern(g), P({"?0*", "*?0", "0*?"}));
  g.add_edge(1, 1);
  EXPECT_EQ(qualitative_pattern(g), P({"?0*", "*?0", "0*?"}));
  EXPECT_THROW(g.add_edge(0, 3), InputError);
}

TEST(NetworkTest, Selectors) {
  EXPECT_EQ(selector_pattern(all_vertices(3), {0, 2}, 3), P({"*0", "00", "0*"}));
  EXPECT_EQ(selector_pattern({1}, all_vertices(3), 3), P({"0*0"}));
  EXPECT_THROW(selector_pattern({3}, {0}, 3), InputError);
}

TEST(NetworkTest, VertexLists) {
  EXPECT_EQ(parse_vertex_list("1-3,5", 6), (std::vector<std::size_t>{0, 1, 2, 4}));
  EXPECT_EQ(parse_vertex_list("2,1,2", 3), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(parse_vertex_list("0", 3), InputError);
  EXPECT_THROW(parse_vertex_list("4", 3), InputError);
  EXPECT_THROW(parse_vertex_list("1,,2", 3), InputError);
  EXPECT_THROW(parse_vertex_list("3-1", 3), InputError);
  EXPECT_THROW(parse_vertex_list("a", 3), InputError);
  EXPECT_THROW(parse_vertex_list("", 3), InputError);
}

TEST(NetworkTest, ParseGraph) {
  const auto res = parse_graph("# header\nn 3\n1 2  # edge\n2 3\n1 2\n3 3\n");
  EXPECT_EQ(res.graph.n, 3u);
  EXPECT_EQ(res.graph.edges.size(), 3u);
  EXPECT_TRUE(res.graph.edges.count({0, 1}));
  EXPECT_TRUE(res.graph.edges.count({2, 2}));
  ASSERT_EQ(res.warnings.size(), 2u);
  EXPECT_NE(res.warnings[0].find("duplicate"), std::string::npos);
  EXPECT_NE(res.warnings[1].find("self-loop"), std::string::npos);
}

TEST(NetworkTest, ParseGraphErrors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of("1 2\n"), 1u);
  EXPECT_EQ(line_of("n 3\n1 4\n"), 2u);
  EXPECT_EQ(line_of("n 3\n\n1 2 3\n"), 3u);
  EXPECT_EQ(line_of("n 3\n1\n"), 2u);
  EXPECT_EQ(line_of("n 0\n"), 1u);
  EXPECT_EQ(line_of("n 2\nx 1\n"), 2u);
  EXPECT_THROW(parse_graph("# empty\n"), ParseError);
}

TEST(NetworkTest, NineVertexFixture) {
  const auto res = load_fixture("nine_vertex.graph");
  EXPECT_EQ(res.graph.n, 9u);
  EXPECT_EQ(res.graph.edges.size(), 13u);
  EXPECT_TRUE(res.warnings.empty());
}

TEST(NetworkTest, NineVertexGoldenPattern) {
  const auto sys = network_system(nine_vertex());
  const auto full = build_output_ctrl_pattern(sys, 8);
  EXPECT_EQ(full.rows(), 7u);
  EXPECT_EQ(full.cols(), 20u);
  EXPECT_EQ(block(full, 0, 0, 7, 9), P({"00*0?*???", "000**????", "0000**???", "00000*???",
                                        "000000*??", "0000000*?", "00000000*"}));
}

TEST(NetworkTest, NineVertexIsTargetControllable) {
  const auto rep = check_target_controllability(nine_vertex());
  EXPECT_EQ(rep.verdict, Verdict::Holds);
  const auto& last = rep.conditions.back().verdict;
  EXPECT_TRUE(last.full_rank);
  EXPECT_EQ(last.pivots.size(), 7u);
  EXPECT_TRUE(replay_row_certificate(block(build_output_ctrl_pattern(network_system(nine_vertex()), 8),
                                           0, 0, 7, rep.conditions.back().cols),
                                     last.pivots));
}

TEST(NetworkTest, TargetsEqualLeaders) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    DirectedGraph g{5, {}};
    std::bernoulli_distribution edge(0.3);
    for (std::size_t u = 0; u < 5; ++u)
      for (std::size_t v = 0; v < 5; ++v)
        if (u != v && edge(rng)) g.add_edge(u, v);
    const std::vector<std::size_t> set{0, 3};
    EXPECT_EQ(check_target_controllability({g, set, set}).verdict, Verdict::Holds);
  }
}

TEST(NetworkTest, UnreachableTargetIsInconclusive) {
  DirectedGraph g{3, {}};
  g.add_edge(0, 1);
  const auto rep = check_target_controllability({g, {0}, {2}});
  EXPECT_EQ(rep.verdict, Verdict::Inconclusive);
  EXPECT_FALSE(rep.notes.empty());
}

TEST(NetworkTest, EmptySetsRejected) {
  DirectedGraph g{2, {{0, 1}}};
  EXPECT_THROW(network_system({g, {}, {0}}), InputError);
  EXPECT_THROW(network_system({g, {0}, {}}), InputError);
}

TEST(NetworkPropertyTest, QualitativeClassMembersAndScaling) {
  std::mt19937_64 rng(10);
  const auto prob = nine_vertex();
  const auto qa = qualitative_pattern(prob.graph);
  const auto sys = network_system(prob);
  const auto pattern = build_output_ctrl_pattern(sys, 8);
  for (int t = 0; t < 100; ++t) {
    ValueDistribution d;
    d.quest_zero_probability = (t % 3) * 0.5;
    const auto a = sample_member(qa, d, rng);
    for (const auto& [u, v] : prob.graph.edges) EXPECT_NE(a(v, u), 0);
    const auto b = sample_member(sys.b, d, rng);
    const auto c = sample_member(sys.c, d, rng);
    const auto num = output_ctrl_matrix(a, b, c, Matrix<Rational>(7, 2, Rational(0)));
    EXPECT_TRUE(contains(pattern, num));
    EXPECT_EQ(numeric_rank(num), 7u);
  }
}

TEST(NetworkPropertyTest, VerdictInvariantUnderRelabelling) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    DirectedGraph g{n, {}};
    std::bernoulli_distribution edge(0.35);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && edge(rng)) g.add_edge(u, v);
    std::vector<std::size_t> perm = all_vertices(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    DirectedGraph h{n, {}};
    for (const auto& [u, v] : g.edges) h.add_edge(perm[u], perm[v]);
    const std::vector<std::size_t> leaders{0};
    const std::vector<std::size_t> targets{n - 1};
    EXPECT_EQ(check_target_controllability({g, leaders, targets}).verdict,
              check_target_controllability({h, {perm[0]}, {perm[n - 1]}}).verdict);
  }
}

}  // namespace
}  // namespace sspat
