#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace semimod;

TEST(Semigroup, RejectsBadInput) {
  EXPECT_THROW(Semigroup(4, 6), Error);
  try {
    Semigroup(4, 6);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCoprime);
  }
  try {
    Semigroup(9, 4);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadOrder);
  }
  EXPECT_THROW(Semigroup(1, 5), Error);
}

TEST(Semigroup, ConductorAndGapCount) {
  for (auto [a, b] : fixtures::small_semigroups(120)) {
    Semigroup s(a, b);
    EXPECT_EQ(s.conductor(), (a - 1) * (b - 1));
    // exactly half of [0, c) are gaps for a symmetric semigroup
    EXPECT_EQ(static_cast<int>(s.gaps().size()) * 2, s.conductor());
  }
}

TEST(Semigroup, MembershipMatchesExplicitSet) {
  for (auto [a, b] : fixtures::small_semigroups(80)) {
    Semigroup s(a, b);
    const int limit = s.window() + 10;
    const auto g = oracle::semigroup_set(a, b, limit);
    for (int n = -3; n <= limit; ++n) EXPECT_EQ(s.contains(n), g.count(n) == 1) << a << "," << b << " n=" << n;
  }
}

TEST(Semigroup, GapCoordinatesRoundTrip) {
  Semigroup s(4, 9);
  EXPECT_EQ(s.gap_coords(5), std::make_pair(1, 3));
  EXPECT_EQ(s.gap_coords(23), std::make_pair(1, 1));
  EXPECT_EQ(s.coord_gap(1, 3), 5);
  for (auto [a, b] : fixtures::small_semigroups(80)) {
    Semigroup t(a, b);
    for (const Gap& g : t.gaps()) {
      EXPECT_GE(g.a, 1);
      EXPECT_LT(g.a, b);
      EXPECT_GE(g.b, 1);
      EXPECT_LT(g.b, a);
      EXPECT_EQ(t.coord_gap(g.a, g.b), g.value);
    }
  }
  EXPECT_THROW(s.gap_coords(8), Error);
}

TEST(Semigroup, KnownGapLists) {
  Semigroup s(4, 9);
  std::vector<int> gaps;
  for (const Gap& g : s.gaps()) gaps.push_back(g.value);
  EXPECT_EQ(gaps, (std::vector<int>{1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19, 23}));
  Semigroup t(5, 7);
  gaps.clear();
  for (const Gap& g : t.gaps()) gaps.push_back(g.value);
  EXPECT_EQ(gaps, (std::vector<int>{1, 2, 3, 4, 6, 8, 9, 11, 13, 16, 18, 23}));
}

TEST(Semigroup, DecompositionIsCanonical) {
  std::mt19937 rng(11);
  for (auto [a, b] : fixtures::small_semigroups(80)) {
    Semigroup s(a, b);
    for (int n = 0; n <= 3 * s.window(); ++n) {
      if (!s.contains(n)) {
        EXPECT_THROW(s.decompose(n), Error);
        continue;
      }
      Decomposition d = s.decompose(n);
      EXPECT_GE(d.e1, 0);
      EXPECT_GE(d.e2, 0);
      EXPECT_LT(d.e2, a);
      EXPECT_EQ(d.e1 * a + d.e2 * b, n);
    }
  }
  Semigroup s(4, 9);
  EXPECT_EQ(s.decompose(9), (Decomposition{0, 1}));
  EXPECT_EQ(s.decompose(36), (Decomposition{9, 0}));
  try {
    s.decompose(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInSemigroup);
  }
}
