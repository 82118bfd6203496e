#include <gtest/gtest.h>

#include "cwl/coset/coset_space.hpp"
#include "cwl/coset/families.hpp"
#include "cwl/stallings/stallings.hpp"
#include "perm_oracle.hpp"

using namespace cwl;

namespace {

std::vector<Word> words(const FreeGroup& F, std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (auto s : list) out.push_back(F.parse(s));
  return out;
}

}  // namespace

TEST(Fold, SingleLetterLoop) {
  FreeGroup F(2);
  auto g = fold(2, words(F, {"a"}));
  EXPECT_EQ(g.vertex_count(), 1);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.next(0, 1), 0);
}

TEST(Fold, ConjugateLoop) {
  FreeGroup F(2);
  auto g = fold(2, words(F, {"a", "bab^-1"}));
  ASSERT_EQ(g.vertex_count(), 2);
  EXPECT_EQ(g.next(0, 1), 0);
  EXPECT_EQ(g.next(0, 2), 1);
  EXPECT_EQ(g.next(1, 1), 1);
  EXPECT_TRUE(g.is_folded());
}

TEST(Fold, IndexTwoKernel) {
  FreeGroup F(2);
  auto g = fold(2, words(F, {"a", "b^2", "bab^-1"}));
  EXPECT_EQ(g.vertex_count(), 2);
  EXPECT_TRUE(g.complete());
  auto ri = rank_index(g);
  EXPECT_EQ(ri.rank, 3);
  EXPECT_EQ(ri.index, 2);
}

TEST(Fold, FoldsRedundantGenerators) {
  FreeGroup F(2);
  auto g = fold(2, words(F, {"ab", "ab", "abab"}));
  EXPECT_EQ(rank_index(g).rank, 1);
  EXPECT_THROW(fold(0, {}), EmptyAlphabet);
}

TEST(Fold, TrivialSubgroup) {
  auto g = fold(2, {});
  EXPECT_EQ(g.vertex_count(), 1);
  EXPECT_EQ(rank_index(g).rank, 0);
  EXPECT_FALSE(rank_index(g).index.has_value());
}

TEST(Fold, DotExport) {
  FreeGroup F(2);
  auto dot = fold(2, words(F, {"a", "bab^-1"})).to_dot();
  EXPECT_NE(dot.find("0 -> 1 [label=\"b\"]"), std::string::npos);
  EXPECT_NE(dot.find("1 -> 1 [label=\"a\"]"), std::string::npos);
}

TEST(Classify, Trichotomy) {
  FreeGroup F(2);
  EXPECT_EQ(classify_pair_free(2, words(F, {"a", "b"})).verdict, FreeVerdict::SLC_yes_finite_index);
  EXPECT_EQ(classify_pair_free(2, words(F, {"a"})).verdict, FreeVerdict::SLC_yes_trivial_or_Z);
  EXPECT_EQ(classify_pair_free(2, words(F, {"a", "bab^-1"})).verdict,
            FreeVerdict::SLC_no_rank_ge2_infinite_index);
  auto whole = classify_pair_free(2, words(F, {"a", "b"}));
  EXPECT_EQ(whole.rank_index.rank, 2);
  EXPECT_EQ(whole.rank_index.index, 1);
}

struct OracleCase {
  int rank;
  std::vector<const char*> gens;
};

class AgainstPermutationOracle : public ::testing::TestWithParam<OracleCase> {};

TEST_P(AgainstPermutationOracle, IndexRankAndMembership) {
  const auto& c = GetParam();
  FreeGroup F(c.rank);
  std::vector<Word> gens;
  for (auto s : c.gens) gens.push_back(F.parse(s));
  auto g = fold(c.rank, gens);
  auto ri = rank_index(g);
  const int max_degree = c.rank == 2 ? 5 : 4;
  auto [degree, action] = oracle::max_degree_action(c.rank, max_degree, gens);
  if (ri.index) {
    ASSERT_LT(*ri.index, max_degree);
    EXPECT_EQ(degree, *ri.index);
    EXPECT_EQ(ri.rank, 1 + *ri.index * (c.rank - 1));
    // Every word of length <= 8 (F_2) is accepted iff it fixes point 0.
    auto ball = ball_enumerate(F, c.rank == 2 ? 8 : 5);
    for (const auto& w : ball.elements) EXPECT_EQ(g.accepts(w), action.apply(0, w) == 0) << F.format(w);
  } else {
    EXPECT_EQ(degree, max_degree);
  }
  for (const auto& w : gens) EXPECT_TRUE(g.accepts(w));
}

INSTANTIATE_TEST_SUITE_P(Golden, AgainstPermutationOracle,
                         ::testing::Values(OracleCase{2, {"a", "b"}}, OracleCase{2, {"a", "b^2", "bab^-1"}},
                                           OracleCase{2, {"a^2", "b^2", "ab"}},
                                           OracleCase{2, {"a", "b^3", "bab^-1", "b^2ab^-2"}},
                                           OracleCase{2, {"a^3", "b", "aba^-1", "a^2ba^-2"}},
                                           OracleCase{2, {"a", "bab^-1"}}, OracleCase{2, {"a^2", "b"}},
                                           OracleCase{3, {"a", "b", "c"}}, OracleCase{3, {"a", "b", "c^2", "cac^-1", "cbc^-1"}}));

TEST(FreeSubgroupOracle, LeftCosetKeysMatchMembership) {
  FreeGroup F(2);
  for (auto gens : {words(F, {"a", "bab^-1"}), words(F, {"a", "b^2", "bab^-1"}), words(F, {"ab"}), words(F, {"a"})}) {
    auto H = free_subgroup(F, gens);
    validate_oracle(F, H);
    auto ball = ball_enumerate(F, 4);
    for (std::size_t i = 0; i < ball.size(); i += 3)
      for (std::size_t j = 0; j < ball.size(); j += 7) {
        const auto& g = ball.elements[i];
        const auto& h = ball.elements[j];
        EXPECT_EQ(H.key(g) == H.key(h), H.contains(F.multiply(F.inverse(g), h)));
      }
  }
}

TEST(FreeSubgroupOracle, FiniteIndexSchreierBallMatchesGraph) {
  FreeGroup F(2);
  auto gens = words(F, {"a", "b^3", "bab^-1", "b^2ab^-2"});
  auto g = fold(2, gens);
  CosetSpace<FreeGroup> X(F, free_subgroup(F, gens));
  auto s = schreier_ball(X, 6);
  EXPECT_EQ(s.counts.back(), static_cast<std::uint64_t>(g.vertex_count()));
  // BFS on the folded graph itself.
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  dist[0] = 0;
  std::vector<int> frontier = {0};
  std::vector<std::uint64_t> counts = {1};
  for (int r = 1; r <= 6; ++r) {
    std::vector<int> next;
    for (int v : frontier)
      for (int x : {1, -1, 2, -2}) {
        int w = g.next(v, x);
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = r;
          next.push_back(w);
        }
      }
    counts.push_back(counts.back() + next.size());
    frontier = next;
  }
  EXPECT_EQ(s.counts, counts);
}
