#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace hamshift;

TEST(InitialLevel, BaseWords) {
  const Level l = initial_level();
  EXPECT_EQ(l.index, 0u);
  EXPECT_EQ(l.word_length, 2u);
  EXPECT_EQ(strings(l), (std::vector<std::string>{"01", "11"}));
  EXPECT_EQ(l.schedule, (RewriteSchedule{Flip{0, true}}));
  EXPECT_EQ(hamming_distance("010"_w, "011"_w), 1u);
  EXPECT_EQ(wrap_position(l), std::optional<std::size_t>(2));
  EXPECT_FALSE(level_invariant_violation(l));
}

TEST(Genericity, Examples) {
  const IndexSequence good{0, 0, 1, 1, 0, 0, 1, 1, 0};
  EXPECT_TRUE(is_generic(good, 2).generic);
  const auto r = is_generic(IndexSequence{0, 1}, 2);
  EXPECT_FALSE(r.generic);
  EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), std::make_pair(0u, 0u)), r.violations.end());
  EXPECT_FALSE(is_generic(IndexSequence{0, 0, 1, 1}, 2).generic);
  EXPECT_TRUE(is_generic(IndexSequence{0, 0, 1, 1, 0}, 2, GenericityMode::once).generic);
  EXPECT_THROW(is_generic(IndexSequence{0, 2}, 2), std::invalid_argument);
}

TEST(Genericity, ViolationsListedExhaustively) {
  const auto r = is_generic(IndexSequence{0, 1, 2}, 3);
  EXPECT_EQ(r.violations.size(), 9u);
  EXPECT_TRUE(std::is_sorted(r.violations.begin(), r.violations.end()));
}

TEST(IndexSequence, DefaultForTwo) {
  EXPECT_EQ(default_index_sequence(2), (IndexSequence{0, 0, 1, 1, 0, 0, 1, 1, 0}));
  EXPECT_EQ(default_index_sequence(22).size(), 969u);
  EXPECT_EQ(default_index_sequence(22, GenericityMode::once).size(), 22u * 22u + 1u);
}

TEST(IndexSequence, SingleSymbolIsDegenerate) {
  // Pair (0,0) sits at positions 0 and 1, one apart, so the two-occurrence
  // condition cannot hold for a single symbol. The sequence is kept only for
  // completeness; no level has one word.
  EXPECT_EQ(default_index_sequence(1), (IndexSequence{0, 0, 0}));
  EXPECT_FALSE(is_generic(default_index_sequence(1), 1).generic);
}

TEST(IndexSequence, DeBruijnIsLexLeastCycle) {
  // Brute force over all 3^9 sequences: the least one whose 9 cyclic pairs
  // are distinct.
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> s(9);
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (int p = 8; p >= 0; --p) {
      s[p] = c % 3;
      c /= 3;
    }
    std::set<std::pair<int, int>> pairs;
    for (int p = 0; p < 9; ++p) pairs.emplace(s[p], s[(p + 1) % 9]);
    if (pairs.size() == 9) {
      best = s;
      break;
    }
  }
  EXPECT_EQ(de_bruijn_order2(3), best);
}

TEST(IndexSequenceProperty, DefaultIsGenericAndDeBruijn) {
  for (std::uint32_t n = 2; n <= 30; ++n) {
    const auto cycle = de_bruijn_order2(n);
    ASSERT_EQ(cycle.size(), std::size_t{n} * n);
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t p = 0; p < cycle.size(); ++p) pairs.emplace(cycle[p], cycle[(p + 1) % cycle.size()]);
    ASSERT_EQ(pairs.size(), cycle.size()) << n;
    ASSERT_EQ(cycle[0], 0u);
    ASSERT_EQ(cycle[1], 0u);
    ASSERT_TRUE(is_generic(default_index_sequence(n), n).generic) << n;
    ASSERT_TRUE(is_generic(default_index_sequence(n, GenericityMode::once), n, GenericityMode::once).generic) << n;
  }
}

TEST(BuildNextLevel, LevelOneWords) {
  const auto& t = tower2();
  const Level& l1 = t[1];
  EXPECT_EQ(*l1.block_count, 9u);
  EXPECT_EQ(l1.size(), 22u);
  EXPECT_EQ(l1.word_length, 23u);
  EXPECT_EQ(l1.words[0].str(), std::string("01") + "0" + "010111110101111101" + "01");
  EXPECT_EQ(strings(l1), level1_words());
  std::vector<std::size_t> diff;
  for_each_difference(l1.words[0], l1.words[1], [&](std::size_t p) { diff.push_back(p); });
  EXPECT_EQ(diff, std::vector<std::size_t>{3});
  EXPECT_EQ(l1.words[21].str(), std::string("11") + "010111110101111101" + "01" + "0");
}

TEST(BuildNextLevel, LevelTwoShape) {
  const Level& l2 = tower2()[2];
  EXPECT_EQ(*l2.block_count, 969u);
  EXPECT_EQ(l2.size(), 21362u);
  EXPECT_EQ(l2.word_length, 22334u);
  EXPECT_FALSE(level_invariant_violation(l2, &tower2()[1]));
  // Digest of all level-2 words from the string-rewriting oracle.
  EXPECT_EQ(oracle::fnv1a(strings(l2)), 0x4859b0d56b0e8026ull);
  EXPECT_EQ(oracle::fnv1a(strings(tower2()[1])), 0x2a74cd544537579eull);
}

TEST(BuildNextLevel, RejectsNonGeneric) {
  try {
    build_next_level(initial_level(), IndexSequence{0, 0, 1, 1});
    FAIL();
  } catch (const GenericityViolated& e) {
    EXPECT_STREQ(e.what(), "genericity violated");
  }
}

TEST(BuildNextLevel, FirstAndLastWordShape) {
  for (std::size_t i = 1; i <= 2; ++i) {
    const Level& prev = tower2()[i - 1];
    const Level& l = tower2()[i];
    BinaryWord u;
    for (auto j : *l.sequence) u.append(prev.words[j]);
    EXPECT_EQ(l.words.front(), prev.words.front() + "0"_w + u + prev.words.front());
    EXPECT_EQ(l.words.back(), prev.words.back() + u + prev.words.front() + "0"_w);
  }
}

TEST(BuildNextLevelProperty, InvariantsOnCustomSequences) {
  // Random generic sequences for level 0 -> 1: pad a shuffled double de
  // Bruijn walk with random symbols and keep the generic ones.
  std::mt19937_64 rng(17);
  int built = 0;
  for (int trial = 0; trial < 200 && built < 40; ++trial) {
    IndexSequence h(rng() % 20 + 8);
    for (auto& v : h) v = rng() & 1;
    if (!is_generic(h, 2).generic) continue;
    ++built;
    const Level l = build_next_level(initial_level(), h);
    ASSERT_FALSE(level_invariant_violation(l, &tower2()[0])) << *level_invariant_violation(l, &tower2()[0]);
    ASSERT_EQ(l.size(), 2 * (h.size() + 2));
    ASSERT_EQ(l.word_length, 2 * (h.size() + 2) + 1);
    // Blocks recorded for every word reassemble it with at most one free zero.
    l.blocks.for_each([&](std::size_t j, std::span<const BlockRef> blocks) {
      ASSERT_EQ(blocks.size(), h.size() + 2);
      for (const auto& b : blocks) ASSERT_EQ(l.words[j].factor(b.start, 2), tower2()[0].words[b.index]);
    });
  }
  EXPECT_GE(built, 10);
}

TEST(BuildNextLevel, UBlocksReturnToTheirIndices) {
  // Blocks 1..k of the last word are u's blocks shifted left by one.
  for (std::size_t i = 1; i <= 2; ++i) {
    const Level& l = tower2()[i];
    const auto first = l.blocks.at(0);
    const auto last = l.blocks.at(l.size() - 1);
    ASSERT_EQ(first.size(), last.size());
    std::multiset<std::uint32_t> a, b;
    for (std::size_t s = 1; s + 1 < first.size(); ++s) {
      EXPECT_EQ(first[s].index, last[s].index);
      EXPECT_EQ(first[s].start, last[s].start + 1);
    }
    EXPECT_EQ(last.front().index, tower2()[i - 1].size() - 1);
    EXPECT_EQ(last.back().index, 0u);
  }
}

TEST(BuildTower, DepthZeroAndOne) {
  EXPECT_EQ(build_tower(0).size(), 1u);
  const auto t = build_tower(1);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1].size(), 22u);
}

TEST(BuildTower, Deterministic) {
  const auto t = build_tower(2);
  EXPECT_EQ(t[2].words, tower2()[2].words);
  EXPECT_EQ(t[2].schedule, tower2()[2].schedule);
}

TEST(BuildTower, DepthCapReportsProjectedLength) {
  try {
    build_tower(3);
    FAIL();
  } catch (const InfeasibleLevel& e) {
    EXPECT_EQ(e.projected_length(), "20383573812395");
    EXPECT_NE(std::string(e.what()).find("level size infeasible"), std::string::npos);
  }
}

TEST(BuildTower, OnceModeIsSmallerAndNotFaithful) {
  const auto t = build_tower(2, TowerOptions{2, GenericityMode::once});
  EXPECT_EQ(*t[1].block_count, 5u);
  EXPECT_EQ(t[1].size(), 14u);
  EXPECT_EQ(t[2].size(), 2786u);
  EXPECT_EQ(t[2].word_length, 2986u);
  EXPECT_FALSE(t[1].faithful);
  EXPECT_FALSE(t[2].faithful);
  EXPECT_TRUE(tower2()[2].faithful);
  EXPECT_FALSE(level_invariant_violation(t[2], &t[1]));
}

TEST(BuildTower, OnceModeLevelThreeIsInfeasible) {
  EXPECT_THROW(build_tower(3, TowerOptions{3, GenericityMode::once}), InfeasibleLevel);
}

TEST(ProjectedShapes, MatchRecurrence) {
  const auto s = projected_shapes(3);
  EXPECT_EQ(s[2].n, 21362);
  EXPECT_EQ(s[2].word_length, 22334);
  EXPECT_EQ(s[3].block_count, BigInt(912670089));
  EXPECT_EQ(s[3].n, BigInt("19496458483942"));
  EXPECT_EQ(s[3].word_length, BigInt("20383573812395"));
}

TEST(LevelInvariant, DetectsCorruption) {
  Level l = tower2()[1];
  l.words[5].flip(0);
  EXPECT_TRUE(level_invariant_violation(l, &tower2()[0]));
  Level m = tower2()[1];
  m.block_count = 8;
  EXPECT_TRUE(level_invariant_violation(m, &tower2()[0]));
}
