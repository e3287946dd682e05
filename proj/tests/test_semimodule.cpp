#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace semimod;

namespace {

std::shared_ptr<const Semigroup> sg(int a, int b) { return std::make_shared<const Semigroup>(a, b); }

}  // namespace

TEST(Normalize, ShiftsAndDropsRedundantGenerators) {
  auto s = sg(4, 9);
  EXPECT_EQ(normalize_semimodule(s, {3, 8, 12, 13}).generators(), (std::vector<int>{0, 5, 10}));
  EXPECT_EQ(normalize_semimodule(s, {0, 4, 5, 9}).generators(), (std::vector<int>{0, 5}));
  EXPECT_EQ(normalize_semimodule(s, {7}).generators(), (std::vector<int>{0}));
  EXPECT_THROW(normalize_semimodule(s, {}), Error);
}

TEST(Normalize, MembershipMatchesExplicitUnion) {
  std::mt19937 rng(3);
  for (auto [a, b] : fixtures::small_semigroups(60)) {
    auto s = sg(a, b);
    std::uniform_int_distribution<int> pick(0, s->window());
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<long long> raw;
      std::vector<int> raw_int;
      for (int k = 0; k < 4; ++k) {
        raw.push_back(pick(rng));
        raw_int.push_back(static_cast<int>(raw.back()));
      }
      GammaSemimodule d = normalize_semimodule(s, raw);
      const int shift = *std::min_element(raw_int.begin(), raw_int.end());
      for (int& x : raw_int) x -= shift;
      const int limit = s->window();
      const auto want = oracle::semimodule_set(a, b, raw_int, limit);
      for (int n = 0; n <= limit; ++n) ASSERT_EQ(d.contains(n), want.count(n) == 1) << d.to_string() << " n=" << n;
      EXPECT_TRUE(is_lean(*s, std::vector<long long>(d.generators().begin(), d.generators().end())));
    }
  }
}

TEST(Lean, DetectsDifferencesInSemigroup) {
  Semigroup s(4, 9);
  EXPECT_TRUE(is_lean(s, {0, 5, 10}));
  EXPECT_FALSE(is_lean(s, {0, 5, 9}));
  EXPECT_FALSE(is_lean(s, {0, 1, 5}));
  EXPECT_TRUE(is_lean(s, {0}));
}

TEST(LatticePath, TurnsFollowGapOrder) {
  auto s = sg(5, 7);
  GammaSemimodule d(s, {0, 6, 8, 9});
  LatticePath p = lattice_path(d);
  EXPECT_EQ(p.alpha, 5);
  EXPECT_EQ(p.beta, 7);
  ASSERT_EQ(p.turns.size(), 3u);
  for (std::size_t i = 1; i < p.turns.size(); ++i) {
    EXPECT_LT(p.turns[i - 1].first, p.turns[i].first);
    EXPECT_GT(p.turns[i - 1].second, p.turns[i].second);
  }
  for (auto [a, b] : p.turns) EXPECT_TRUE(d.contains(s->coord_gap(a, b)));
  EXPECT_TRUE(lattice_path(GammaSemimodule(s, {0})).turns.empty());
}

TEST(Syzygy, WorkedExampleFiveSeven) {
  GammaSemimodule d(sg(5, 7), {0, 6, 8, 9});
  SyzygyData syz = syzygy(d);
  EXPECT_EQ(syz.generators, (std::vector<int>{13, 14, 15, 16}));
  EXPECT_EQ(syz.max_gen, 16);
  EXPECT_EQ(syzygy_closed_form(d), syz.generators);
  EXPECT_EQ(conductor_semimodule(d), 16 - 5 - 7 + 1);
}

TEST(Syzygy, SevenNineGolden) {
  GammaSemimodule d(sg(7, 9), {0, 5, 20, 31});
  SyzygyData syz = syzygy(d);
  EXPECT_EQ(syz.generators, (std::vector<int>{14, 27, 38, 40}));
  EXPECT_EQ(syz.max_gen, 40);
  EXPECT_EQ(conductor_semimodule(d), 25);
  EXPECT_EQ(d.conductor_scan(), 25);
}

TEST(Syzygy, TrivialSemimodule) {
  GammaSemimodule d(sg(4, 9), {0});
  EXPECT_EQ(syzygy(d).generators, (std::vector<int>{36}));
  EXPECT_EQ(conductor_semimodule(d), 24);
}

TEST(Syzygy, MatchesSetOracleAndClosedFormEverywhere) {
  for (auto [a, b] : fixtures::small_semigroups(60)) {
    auto s = sg(a, b);
    for (const auto& d : all_semimodules(s)) {
      const auto syz = syzygy(d);
      ASSERT_EQ(syz.generators, oracle::syzygy_generators(a, b, d.generators())) << s->to_string() << d.to_string();
      ASSERT_EQ(syzygy_closed_form(d), syz.generators) << s->to_string() << d.to_string();
      ASSERT_EQ(conductor_semimodule(d), d.conductor_scan());
      ASSERT_EQ(syz.generators.size(), d.generators().size());
    }
  }
}

TEST(USequence, SevenNineGolden) {
  GammaSemimodule d(sg(7, 9), {0, 5, 20, 31});
  USequence u = u_sequence(d);
  EXPECT_EQ(u.values, (std::vector<int>{14, 27, 38}));
  EXPECT_TRUE(u.increasing);
}

TEST(USequence, DirectMatchesOracleAndClosedForm) {
  for (auto [a, b] : fixtures::small_semigroups(80)) {
    auto s = sg(a, b);
    for (const auto& d : all_semimodules(s)) {
      ASSERT_EQ(u_sequence(d).values, oracle::u_values(a, b, d.generators())) << d.to_string();
      const auto gap_order = u_sequence_gap_order(d);
      ASSERT_EQ(gap_order, oracle::u_values(a, b, d.generators_gap_order())) << d.to_string();
      ASSERT_EQ(u_sequence_closed_form(d), gap_order) << s->to_string() << d.to_string();
    }
  }
}

TEST(Increasing, Definition) {
  auto s = sg(4, 9);
  EXPECT_TRUE(is_increasing(GammaSemimodule(s, {0})));
  EXPECT_TRUE(is_increasing(GammaSemimodule(s, {0, 5, 10, 15})));
  USequence cert;
  // u_1 of [0,5] is 9, so a second generator 6 is too small
  EXPECT_FALSE(is_increasing(GammaSemimodule(s, {0, 5, 6}), &cert));
  EXPECT_EQ(cert.values.front(), 9);
}

TEST(Delorme, SplitValues) {
  Semigroup s(4, 9);
  DelormeSplit d = delorme_split(s, 0, 5);
  EXPECT_EQ(d.u, 9);
  EXPECT_EQ(d.v, 0 + 5 + 36 - 9);
  EXPECT_EQ(d.ubar, 9 + 24 - 36);
  EXPECT_EQ(d.vbar, d.v + 24 - 36);
  try {
    delorme_split(s, 0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DifferenceInSemigroup);
  }
}

TEST(Delorme, IdentitiesOnRandomPairs) {
  std::mt19937 rng(29);
  for (auto [a, b] : fixtures::small_semigroups(80)) {
    Semigroup s(a, b);
    for (int i = 0; i < 40; ++i) {
      auto [p, q] = fixtures::random_gap_pair(s, rng);
      DelormeSplit split = delorme_split(s, p, q);
      auto [lo, hi] = delorme_window(s, p, q);
      ASSERT_TRUE(delorme_identities_hold(s, p, q, split, lo, hi)) << s.to_string() << " " << p << "," << q;
      // u and v both lie in the intersection and u is its minimum
      ASSERT_TRUE(s.contains(split.u - p) && s.contains(split.u - q));
      ASSERT_TRUE(s.contains(split.v - p) && s.contains(split.v - q));
      for (long long n = std::max(p, q); n < split.u; ++n) ASSERT_FALSE(s.contains(n - p) && s.contains(n - q));
    }
  }
}

TEST(Delorme, IdentityCheckerRejectsWrongSplit) {
  Semigroup s(5, 7);
  DelormeSplit good = delorme_split(s, 0, 6);
  DelormeSplit bad = good;
  bad.u += 1;
  auto [lo, hi] = delorme_window(s, 0, 6);
  EXPECT_TRUE(delorme_identities_hold(s, 0, 6, good, lo, hi));
  EXPECT_FALSE(delorme_identities_hold(s, 0, 6, bad, lo, hi));
}

TEST(CSequence, ValuesAndContainment) {
  auto s = sg(4, 9);
  EXPECT_EQ(c_sequence(GammaSemimodule(s, {0, 5})).values, (std::vector<int>{-4}));
  EXPECT_EQ(c_sequence(GammaSemimodule(s, {0, 5, 10, 15})).values, (std::vector<int>{-4, -8, -12}));
  EXPECT_THROW(c_sequence(GammaSemimodule(s, {0, 5, 6})), Error);
  for (auto [a, b] : fixtures::small_semigroups(80)) {
    auto t = sg(a, b);
    for (const auto& d : collect_semimodules(increasing_forest(t))) {
      const auto c = c_sequence(d);
      ASSERT_EQ(c.values.size(), d.rank());
      for (int v : c.values) ASSERT_TRUE(t->contains(-v));
    }
  }
}
