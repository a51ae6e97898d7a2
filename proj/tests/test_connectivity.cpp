#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace hamshift;

namespace {

FactorSet set_of(std::initializer_list<const char*> words) {
  FactorSet f(std::string(*words.begin()).size());
  for (const char* w : words) f.insert(BinaryWord::parse(w));
  return f;
}

}  // namespace

TEST(ChangeGraph, Examples) {
  EXPECT_EQ(build_change_graph(set_of({"01", "11"}), 1).edges.size(), 1u);
  EXPECT_EQ(build_change_graph(set_of({"00", "11"}), 1).edges.size(), 0u);
  EXPECT_EQ(build_change_graph(set_of({"00", "11"}), 2).edges.size(), 1u);
  EXPECT_EQ(build_change_graph(set_of({"0110", "1010"}), 2).edges.size(), 1u);
  // Two differences three apart are not one width-2 block.
  EXPECT_EQ(build_change_graph(set_of({"0110", "1111"}), 2).edges.size(), 0u);
  EXPECT_THROW(build_change_graph(set_of({"01"}), 0), std::invalid_argument);
  EXPECT_THROW(build_change_graph(set_of({"01"}), 3), std::invalid_argument);
}

TEST(ChangeGraph, Components) {
  EXPECT_EQ(connected_components(build_change_graph(set_of({"01", "11"}), 1)).size(), 1u);
  EXPECT_EQ(connected_components(build_change_graph(set_of({"00", "11"}), 1)).size(), 2u);
  EXPECT_EQ(connected_components(build_change_graph(set_of({"0101"}), 3)).size(), 1u);
  EXPECT_TRUE(connected_components(build_change_graph(FactorSet(3), 1)).empty());
}

TEST(ChangeGraphProperty, MatchesAllPairsOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    // Include n > 64 to exercise word-keyed buckets.
    const std::size_t n = trial % 4 == 3 ? 65 + rng() % 30 : rng() % 12 + 1;
    const std::size_t k = rng() % std::min<std::size_t>(n, 3) + 1;
    const std::size_t m = rng() % 300 + 1;
    FactorSet f(n);
    const std::string seed = oracle::random_bits(rng, n);
    for (std::size_t t = 0; t < m; ++t) {
      // Local perturbations of one seed so edges are plentiful.
      std::string w = seed;
      for (std::size_t flips = rng() % 4; flips > 0; --flips) w[rng() % n] ^= 1;
      f.insert(BinaryWord::parse(w));
    }
    std::vector<std::string> nodes;
    for (const auto& w : f.sorted()) nodes.push_back(w.str());
    const auto g = build_change_graph(f, k);
    ASSERT_EQ(g.edges.size(), oracle::edge_count(nodes, k)) << "n=" << n << " k=" << k;
    ASSERT_EQ(connected_components(g).size(), oracle::components(nodes, k));
    for (auto [a, b] : g.edges) {
      const std::size_t w = oracle::change_width(nodes[a], nodes[b]);
      ASSERT_TRUE(w >= 1 && w <= k);
      if (k == 1) {
        ASSERT_EQ(oracle::hamming(nodes[a], nodes[b]), 1u);
      }
    }
  }
}

TEST(ChangeGraphProperty, ComponentsIgnoreInsertionOrder) {
  std::mt19937_64 rng(8);
  std::vector<std::string> words;
  for (int t = 0; t < 200; ++t) words.push_back(oracle::random_bits(rng, 9));
  FactorSet a(9), b(9);
  for (const auto& w : words) a.insert(BinaryWord::parse(w));
  std::shuffle(words.begin(), words.end(), rng);
  for (const auto& w : words) b.insert(BinaryWord::parse(w));
  EXPECT_EQ(connected_components(build_change_graph(a, 1)), connected_components(build_change_graph(b, 1)));
}

TEST(ChangeGraph, EachLevelIsOneChainConnectedComponent) {
  // Level 2 is covered by chain adjacency alone: 21362 nodes of 22334 bits
  // are too wide for per-column bucketing in a unit test.
  for (std::size_t i = 0; i <= 1; ++i) {
    const Level& l = tower2()[i];
    FactorSet f(l.word_length);
    for (const auto& w : l.words) f.insert(w);
    const auto g = build_change_graph(f, 1);
    ASSERT_EQ(connected_components(g).size(), 1u) << i;
    for (std::size_t j = 0; j + 1 < l.size(); ++j) {
      const auto a = *g.index_of(l.words[j]), b = *g.index_of(l.words[j + 1]);
      ASSERT_TRUE(std::binary_search(g.adjacency[a].begin(), g.adjacency[a].end(), b));
    }
  }
  const Level& l2 = tower2()[2];
  for (std::size_t j = 0; j + 1 < l2.size(); ++j) ASSERT_EQ(hamming_distance(l2.words[j], l2.words[j + 1]), 1u);
}

TEST(ChangeGraph, FactorLanguageAtDepthTwoIsConnected) {
  for (std::size_t n : {2u, 23u}) {
    const auto g = build_change_graph(factor_language(tower2(), n).factors, 1);
    EXPECT_EQ(connected_components(g).size(), 1u) << n;
  }
}

TEST(BfsPath, Examples) {
  const auto g0 = build_change_graph(set_of({"01", "11"}), 1);
  const auto p = bfs_path(g0, "01"_w, "11"_w);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->words, (std::vector<BinaryWord>{"01"_w, "11"_w}));
  const auto same = bfs_path(g0, "01"_w, "01"_w);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->edge_count(), 0u);
  EXPECT_THROW(bfs_path(g0, "00"_w, "01"_w), std::invalid_argument);
  const auto split = build_change_graph(set_of({"00", "11"}), 1);
  EXPECT_FALSE(bfs_path(split, "00"_w, "11"_w));
}

TEST(BfsPath, FactorsOfLevelOne) {
  const std::vector<Level> t1(tower2().begin(), tower2().begin() + 2);
  const auto g = build_change_graph(factor_language(t1, 4).factors, 1);
  const auto p = bfs_path(g, "0101"_w, "1111"_w);
  ASSERT_TRUE(p);
  EXPECT_GE(p->edge_count(), 2u);
  EXPECT_TRUE(validate_path(*p, 1));
  EXPECT_EQ(p->words.front(), "0101"_w);
  EXPECT_EQ(p->words.back(), "1111"_w);
  // Shortest: the Hamming distance is 2, so exactly two steps.
  EXPECT_EQ(p->edge_count(), 2u);
}

TEST(BfsPathProperty, ShortestAndValid) {
  std::mt19937_64 rng(2);
  const auto f = factor_language(tower2(), 12).factors;
  const auto g = build_change_graph(f, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& u = g.nodes[rng() % g.nodes.size()];
    const auto& v = g.nodes[rng() % g.nodes.size()];
    const auto p = bfs_path(g, u, v);
    ASSERT_TRUE(p);
    ASSERT_TRUE(validate_path(*p, 1));
    ASSERT_GE(p->edge_count(), hamming_distance(u, v));
    ASSERT_EQ(bfs_path(g, u, v)->words, p->words);
  }
}

TEST(ValidatePath, RejectsBadSteps) {
  EXPECT_TRUE(validate_path(HammingPath{{"00"_w, "01"_w}}, 1));
  EXPECT_FALSE(validate_path(HammingPath{{"00"_w, "00"_w}}, 1));
  EXPECT_FALSE(validate_path(HammingPath{{"00"_w, "11"_w}}, 1));
  EXPECT_TRUE(validate_path(HammingPath{{"00"_w, "11"_w}}, 2));
  EXPECT_FALSE(validate_path(HammingPath{{"00"_w, "011"_w}}, 2));
}

TEST(ScheduleProjection, WholeWordIsTheChain) {
  const auto p = schedule_projection_path(tower2()[1], 0, 23);
  EXPECT_EQ(p.words, tower2()[1].words);
}

TEST(ScheduleProjection, NarrowWindows) {
  const Level& l1 = tower2()[1];
  const auto p = schedule_projection_path(l1, 3, 2);
  EXPECT_TRUE(validate_path(p, 1));
  EXPECT_EQ(p.words.front(), l1.words.front().factor(3, 2));
  EXPECT_EQ(p.words.back(), l1.words.back().factor(3, 2));
  for (std::size_t t = 1; t < p.words.size(); ++t) EXPECT_NE(p.words[t], p.words[t - 1]);

  const Level& l2 = tower2()[2];
  const auto q = schedule_projection_path(l2, 100, 23);
  EXPECT_TRUE(validate_path(q, 1));
  EXPECT_EQ(q.words.front(), l2.words.front().factor(100, 23));
  EXPECT_EQ(q.words.back(), l2.words.back().factor(100, 23));
}

TEST(ScheduleProjection, WindowMustFit) {
  EXPECT_THROW(schedule_projection_path(tower2()[1], 20, 4), std::out_of_range);
  EXPECT_THROW(schedule_projection_path(tower2()[1], 0, 0), std::out_of_range);
  EXPECT_THROW(schedule_projection_path(tower2()[1], 24, 1), std::out_of_range);
}

TEST(LeftShift, LevelsAgreeExceptAtTheWrapColumn) {
  const auto r0 = left_shift_correspondence(tower2()[0], 1);
  EXPECT_TRUE(r0.consistent);
  EXPECT_EQ(r0.differing_column, std::optional<std::size_t>(2));
  struct Case {
    std::size_t level, n;
  };
  for (const Case c : {Case{1, 22}, Case{1, 5}, Case{2, 100}}) {
    const auto r = left_shift_correspondence(tower2()[c.level], c.n);
    EXPECT_TRUE(r.consistent) << c.level << " " << c.n;
    EXPECT_EQ(r.differing_column, std::optional<std::size_t>(2));
    EXPECT_EQ(r.windows_checked, tower2()[c.level].word_length - c.n);
    EXPECT_EQ(r.windows_agreeing + r.windows_intruded, r.windows_checked);
  }
  EXPECT_THROW(left_shift_correspondence(tower2()[1], 23), std::invalid_argument);
}

TEST(Export, DotAndJson) {
  const auto g = build_change_graph(set_of({"00", "01", "11"}), 1);
  std::ostringstream dot;
  write_dot(dot, g);
  EXPECT_EQ(dot.str(),
            "graph change_graph_n2_k1 {\n  0 [label=\"00\"];\n  1 [label=\"01\"];\n  2 [label=\"11\"];\n"
            "  0 -- 1;\n  1 -- 2;\n}\n");
  EXPECT_EQ(to_json(g).dump(), R"({"n":2,"k":1,"nodes":["00","01","11"],"edges":[[0,1],[1,2]]})");
}
