#include <gtest/gtest.h>

#include <random>

#include "cwl/coset/coset_space.hpp"
#include "cwl/coset/families.hpp"
#include "cwl/group/presets.hpp"

using namespace cwl;

TEST(Membership, MatrixFamilies) {
  auto G = MatrixGroupZ::sl_elementary(3);
  auto ut = unitriangular(G);
  EXPECT_TRUE(ut.contains(IntMatrix::from_rows({{1, 1, 2}, {0, 1, 3}, {0, 0, 1}})));
  EXPECT_FALSE(ut.contains(IntMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
  auto P = subspace_stabilizer(G, {{0, 1, 0}, {0, 0, 1}});
  EXPECT_TRUE(P.contains(IntMatrix::from_rows({{1, 0, 0}, {4, 2, 1}, {-7, 1, 1}})));
  EXPECT_FALSE(P.contains(IntMatrix::elementary(3, 0, 1, 1)));
  auto gamma = congruence(G, 2);
  EXPECT_TRUE(gamma.contains(IntMatrix::elementary(3, 0, 2, 4)));
  EXPECT_FALSE(gamma.contains(IntMatrix::elementary(3, 0, 2, 1)));
}

TEST(Membership, FreeCyclic) {
  FreeGroup F(2);
  auto H = free_subgroup(F, {F.parse("a")});
  EXPECT_TRUE(H.contains(F.parse("a^5")));
  EXPECT_FALSE(H.contains(F.parse("b")));
}

TEST(Membership, CustomWithoutPredicate) {
  SubgroupOracle<FreeGroup> H;
  H.name = "opaque";
  EXPECT_THROW(H.contains(Word{}), UnsupportedFamily);
}

TEST(CosetKey, StripTrailingRun) {
  FreeGroup F(2);
  auto H = free_subgroup(F, {F.parse("a")});
  EXPECT_EQ(H.key(F.parse("ba")), H.key(F.parse("baa")));
  EXPECT_EQ(H.key(F.parse("ba")), F.parse("b").letters);
}

TEST(CosetKey, LineImage) {
  auto G = MatrixGroupZ::sl_elementary(3);
  auto H = line_stabilizer(G, {1, 0, 0});
  std::string expect;
  for (int x : {1, 5, 0}) append_bigint(expect, x);
  EXPECT_EQ(H.key(IntMatrix::elementary(3, 1, 0, 5)), expect);
  IntMatrix flip = IntMatrix::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  EXPECT_TRUE(H.contains(flip));
}

// Key soundness against the membership test on all pairs of a ball.
template <class M>
void expect_key_sound(const M& model, const SubgroupOracle<M>& H, std::size_t radius, std::size_t stride = 1) {
  auto ball = ball_enumerate(model, radius);
  for (std::size_t i = 0; i < ball.size(); i += stride)
    for (std::size_t j = 0; j < ball.size(); j += stride) {
      const auto& g = ball.elements[i];
      const auto& h = ball.elements[j];
      ASSERT_EQ(H.key(g) == H.key(h), H.contains(model.multiply(model.inverse(g), h)))
          << model.format(g) << " vs " << model.format(h);
    }
}

TEST(CosetKey, SoundOnBalls) {
  auto G = MatrixGroupZ::sl_elementary(3);
  expect_key_sound(G, unitriangular(G), 2, 3);
  expect_key_sound(G, line_stabilizer(G, {1, 0, 0}), 2, 3);
  expect_key_sound(G, subspace_stabilizer(G, {{0, 1, 0}, {0, 0, 1}}), 2, 3);
  expect_key_sound(G, congruence(G, 3), 2, 3);
  auto Q = MatrixGroupZ::heisenberg();
  expect_key_sound(Q, cyclic_powers(Q, IntMatrix::elementary(3, 0, 1, 1)), 4);
  expect_key_sound(Q, cyclic_powers(Q, IntMatrix::elementary(3, 1, 2, 2)), 4);
  FreeAbelian Z(2);
  expect_key_sound(Z, sublattice(Z, {IntVec{{2, 0}}, IntVec{{1, 3}}}), 4);
}

// UT_3 keys agree with the membership-scan fallback on a radius-6 ball of K.
TEST(CosetKey, UnitriangularMatchesFallbackScan) {
  auto K = k_group();
  auto ut = unitriangular(K);
  auto scan_only = custom_subgroup<MatrixGroupZ>("UT3 scan", ut.membership);
  CosetSpace<MatrixGroupZ> keyed(K, ut), scanned(K, scan_only);
  auto ball = ball_enumerate(K, 3);
  for (const auto& g : ball.elements) EXPECT_EQ(keyed.id_of(g), scanned.id_of(g));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto g = random_word_element(K, rng() % 7, rng);
    IntMatrix u = IntMatrix::identity(3);
    u(0, 1) = static_cast<long>(rng() % 9) - 4;
    u(0, 2) = static_cast<long>(rng() % 9) - 4;
    u(1, 2) = static_cast<long>(rng() % 9) - 4;
    EXPECT_EQ(ut.key(g), ut.key(K.multiply(g, u)));
  }
}

TEST(CosetSpace, ActionAndUnknownKeys) {
  FreeGroup F(2);
  CosetSpace<FreeGroup> X(F, free_subgroup(F, {F.parse("a")}));
  auto o = X.key(X.origin());
  EXPECT_EQ(X.act_key(F.parse("b"), o), X.coset_key(F.parse("b")));
  EXPECT_EQ(X.act_key(Word{}, o), o);
  EXPECT_THROW(X.act_key(F.parse("b"), "zzz"), UnknownKey);
  EXPECT_THROW(X.rep(999), UnknownKey);
}

TEST(CosetSpace, ActionIsAssociative) {
  auto G = MatrixGroupZ::sl_elementary(3);
  CosetSpace<MatrixGroupZ> X(G, subspace_stabilizer(G, {{0, 1, 0}, {0, 0, 1}}));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto g = random_word_element(G, rng() % 5, rng);
    auto h = random_word_element(G, rng() % 5, rng);
    auto x = X.id_of(random_word_element(G, rng() % 5, rng));
    EXPECT_EQ(X.act(G.multiply(g, h), x), X.act(g, X.act(h, x)));
  }
}

TEST(SchreierBall, FreeModCyclic) {
  FreeGroup F(2);
  CosetSpace<FreeGroup> X(F, free_subgroup(F, {F.parse("a")}));
  auto s = schreier_ball(X, 2);
  EXPECT_EQ(s.counts, (std::vector<std::uint64_t>{1, 3, 9}));
}

TEST(SchreierBall, WholeGroupIsAPoint) {
  FreeGroup F(2);
  CosetSpace<FreeGroup> X(F, whole_group(F));
  EXPECT_EQ(schreier_ball(X, 5).counts, std::vector<std::uint64_t>(6, 1));
}

TEST(SchreierBall, BoundedByGroupBall) {
  auto G = MatrixGroupZ::sl_elementary(3);
  CosetSpace<MatrixGroupZ> X(G, unitriangular(G));
  auto s = schreier_ball(X, 2);
  auto b = ball_enumerate(G, 2);
  for (std::size_t r = 0; r <= 2; ++r) EXPECT_LE(s.counts[r], b.ball_size(r));
}

// F_2 / pi^-1(<u>) against Q/K computed inside H_3(Z).
TEST(SchreierBall, HeisenbergPullbackMatchesQuotient) {
  FreeGroup F(2);
  auto Q = MatrixGroupZ::heisenberg();
  IntMatrix u = IntMatrix::elementary(3, 0, 1, 1), v = IntMatrix::elementary(3, 1, 2, 1);
  auto pi = free_hom(Q, {u, v});
  auto H = pullback<FreeGroup, MatrixGroupZ>(pi, cyclic_powers(Q, u));
  CosetSpace<FreeGroup> X(F, H);
  CosetSpace<MatrixGroupZ> Y(Q, cyclic_powers(Q, u));
  auto a = schreier_ball(X, 8);
  auto b = schreier_ball(Y, 8);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(b.counts[2], 9u);
  EXPECT_TRUE(H.contains(F.parse("a")));
  EXPECT_FALSE(H.contains(F.parse("abAB")));
  EXPECT_TRUE(H.contains(F.parse("abABabaBAA")));
  EXPECT_FALSE(H.contains(F.parse("b")));
}

TEST(SchreierBall, ExportFormats) {
  FreeGroup F(2);
  CosetSpace<FreeGroup> X(F, free_subgroup(F, {F.parse("a")}));
  auto csv = schreier_edges_csv(X, 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "src_key_hex,gen_label,dst_key_hex");
  EXPECT_NE(csv.find(",a,"), std::string::npos);
  auto g = schreier_growth_csv(schreier_ball(X, 2));
  EXPECT_EQ(g, "radius,ball,sphere\n0,1,1\n1,3,2\n2,9,6\n");
}

TEST(Fallback, ScanLimit) {
  FreeGroup F(2);
  auto H = custom_subgroup<FreeGroup>("<a> by scan", [](const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::abs(w.at(i)) != 1) return false;
    return true;
  });
  CosetSpace<FreeGroup> X(F, H, 5);
  EXPECT_THROW(schreier_ball(X, 3), FallbackTooSlow);
  CosetSpace<FreeGroup> Y(F, H);
  EXPECT_EQ(schreier_ball(Y, 2).counts, (std::vector<std::uint64_t>{1, 3, 9}));
}

TEST(Validate, RejectsNonSubgroup) {
  FreeGroup F(2);
  auto bad = custom_subgroup<FreeGroup>("length<=1", [](const Word& w) { return w.size() <= 1; });
  EXPECT_THROW(validate_oracle(F, bad), InvalidOracle);
  auto good = free_subgroup(F, {F.parse("a"), F.parse("bab^-1")});
  EXPECT_NO_THROW(validate_oracle(F, good));
  auto G = MatrixGroupZ::sl_elementary(3);
  EXPECT_NO_THROW(validate_oracle(G, unitriangular(G)));
  EXPECT_NO_THROW(validate_oracle(G, congruence(G, 2)));
}
