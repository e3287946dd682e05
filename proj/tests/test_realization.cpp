#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace semimod;

namespace {

std::shared_ptr<const Semigroup> sg(int a, int b) { return std::make_shared<const Semigroup>(a, b); }

RealizeOptions kaehler_opts() {
  RealizeOptions opt;
  opt.run.mode = Mode::Kaehler;
  return opt;
}

std::vector<std::string> texts(const ConditionSystem& cs) {
  std::vector<std::string> out;
  for (const auto& e : cs.equalities) out.push_back(e.text());
  for (const auto& n : cs.nonvanishing) out.push_back(n.text());
  return out;
}

bool mentions(const ConditionSystem& cs, const std::string& text) {
  const auto all = texts(cs);
  return std::find(all.begin(), all.end(), text) != all.end();
}

// independent check of a realization: rank-based value set of <1, z>
std::vector<int> rank_values(const RealizationResult& r) {
  return oracle::minimal_normalized(
      oracle::value_set_by_rank(r.param, {oracle::dense(one_series()), oracle::dense(r.z)}), r.param.alpha,
      r.param.beta);
}

}  // namespace

TEST(Schedule, FourNineChain) {
  Schedule sch = schedule(GammaSemimodule(sg(4, 9), {0, 5, 10, 15}));
  EXPECT_EQ(sch.s(), 3);
  EXPECT_EQ(sch.u, (std::vector<int>{0, 9, 14, 19}));
  EXPECT_EQ(sch.sigma, (std::vector<int>{0, 0, 1, 2}));
  EXPECT_EQ(std::vector<int>(sch.shifts.begin() + 1, sch.shifts.end()), (std::vector<int>{5, 9, 13}));
  EXPECT_EQ(sch.blocks[2], (std::pair<int, int>{0, 1}));
  EXPECT_EQ(sch.blocks[3], (std::pair<int, int>{1, 2}));
  EXPECT_EQ(sch.final_shift, 17);
  EXPECT_EQ(sch.coefficient_count, 14);
}

TEST(Schedule, SevenNineChain) {
  Schedule sch = schedule(GammaSemimodule(sg(7, 9), {0, 5, 20, 31}));
  EXPECT_EQ(sch.sigma[2], 6);
  EXPECT_EQ(sch.sigma[3], 10);
  EXPECT_EQ(sch.final_shift, 38 - 10);
}

TEST(Schedule, RejectsNonIncreasing) {
  try {
    schedule(GammaSemimodule(sg(4, 9), {0, 5, 6}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIncreasing);
  }
}

TEST(Generators, Shape) {
  Semigroup s(4, 9);
  auto [y, z] = build_generators(s, GammaSemimodule(sg(4, 9), {0, 5}), Mode::Kaehler);
  EXPECT_EQ(y.trunc(), 2 * 36 + 14);
  EXPECT_EQ(y.coeff(9), MPoly(14, Rat(1)));
  EXPECT_EQ(y.coeff(11), MPoly::var(14, 2));
  EXPECT_EQ(z.coeff(5), MPoly(14, Rat(9, 4)));
  EXPECT_EQ(z.coeff(7), MPoly::var(14, 2) * Rat(11, 4));
  EXPECT_EQ(z.terms().size(), 15u);

  GeneratorCoefficients gen = generator_coefficients(s, 5, Mode::General);
  EXPECT_EQ(gen.c0, Rat(1));
  EXPECT_EQ(gen.c[1], Rat(3, 2));
  EXPECT_THROW(generator_coefficients(s, 6, Mode::Kaehler), Error);
}

TEST(Mode, Parsing) {
  EXPECT_EQ(parse_mode("general"), Mode::General);
  EXPECT_EQ(parse_mode("kaehler"), Mode::Kaehler);
  try {
    parse_mode("other");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadMode);
  }
  RealizeOptions opt = kaehler_opts();
  EXPECT_THROW(realize(GammaSemimodule(sg(4, 9), {0, 6}), opt), Error);
}

TEST(Conditions, KaehlerFourNineStrata) {
  auto s = sg(4, 9);
  RunOptions opt;
  opt.mode = Mode::Kaehler;

  ConditionSystem top = run_blocks(GammaSemimodule(s, {0, 5, 10}), opt).conditions;
  EXPECT_TRUE(mentions(top, "X_2 = 19/18*X_1^2")) << ::testing::PrintToString(texts(top));
  EXPECT_TRUE(mentions(top, "X_1 != 0"));
  EXPECT_TRUE(top.residuals.empty());

  ConditionSystem c11 = run_blocks(GammaSemimodule(s, {0, 5, 11}), opt).conditions;
  EXPECT_TRUE(mentions(c11, "X_1 = 0"));
  EXPECT_TRUE(mentions(c11, "X_2 != 0"));

  ConditionSystem c15 = run_blocks(GammaSemimodule(s, {0, 5, 15}), opt).conditions;
  EXPECT_TRUE(mentions(c15, "X_1 = 0"));
  EXPECT_TRUE(mentions(c15, "X_2 = 0"));
  EXPECT_TRUE(mentions(c15, "X_6 != 0"));

  ConditionSystem c19 = run_blocks(GammaSemimodule(s, {0, 5, 19}), opt).conditions;
  for (const char* t : {"X_1 = 0", "X_2 = 0", "X_6 = 0", "X_10 != 0"}) EXPECT_TRUE(mentions(c19, t)) << t;

  ConditionSystem c4 = run_blocks(GammaSemimodule(s, {0, 5, 10, 15}), opt).conditions;
  EXPECT_TRUE(mentions(c4, "X_1 != 0"));
  EXPECT_TRUE(mentions(c4, "X_2 != 19/18*X_1^2"));
}

TEST(Conditions, SupportRestrictsVariables) {
  RunOptions opt;
  opt.mode = Mode::Kaehler;
  opt.support = {1, 2, 6, 10};
  ConditionSystem cs = run_blocks(GammaSemimodule(sg(4, 9), {0, 5}), opt).conditions;
  EXPECT_EQ(cs.support, opt.support);
  for (const char* t : {"X_1 = 0", "X_2 = 0", "X_6 = 0", "X_10 = 0"}) EXPECT_TRUE(mentions(cs, t)) << t;
  for (const auto& e : cs.equalities) EXPECT_NE(std::find(opt.support.begin(), opt.support.end(), e.var), opt.support.end());
}

TEST(Solver, ForwardSubstitution) {
  ConditionSystem cs;
  cs.arity = 3;
  MPoly x1 = MPoly::var(3, 1);
  cs.equalities.push_back({2, x1 * x1 * Rat(19), MPoly(3, Rat(18))});
  cs.nonvanishing.push_back({2, 1, x1, MPoly(3), MPoly(3)});
  std::vector<Rat> x = solve_forward(cs);
  EXPECT_EQ(x[1], Rat(1));
  EXPECT_EQ(x[2], Rat(19, 18));
  EXPECT_EQ(x[3], Rat(0));

  // X_1 != 0 and X_2 != X_1: picks X_1 = 1 then X_2 = 2
  ConditionSystem ne;
  ne.arity = 2;
  ne.nonvanishing.push_back({2, 1, MPoly::var(2, 1), MPoly(2), MPoly(2)});
  ne.nonvanishing.push_back({3, 2, MPoly::var(2, 2) - MPoly::var(2, 1), MPoly::var(2, 1), MPoly(2, Rat(1))});
  x = solve_forward(ne);
  EXPECT_EQ(x[1], Rat(1));
  EXPECT_EQ(x[2], Rat(2));

  ConditionSystem bad;
  bad.arity = 1;
  bad.residuals.push_back({0, 0, MPoly(1, Rat(1))});
  EXPECT_THROW(solve_forward(bad), Error);
}

TEST(Realize, GeneralTwoGeneratorsUsesZeroAssignment) {
  for (auto [a, b] : fixtures::matrix_semigroups()) {
    auto s = sg(a, b);
    for (const Gap& gap : s->gaps()) {
      const int g1 = gap.value;
      RealizationResult r = realize(GammaSemimodule(s, {0, g1}));
      ASSERT_TRUE(r.verified);
      for (const Rat& c : r.param.coeffs) ASSERT_EQ(c, Rat(0)) << s->to_string() << " g1=" << g1;
    }
  }
}

TEST(Realize, TrivialSemimodule) {
  RealizationResult r = realize(GammaSemimodule(sg(4, 9), {0}));
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.z.coeff(0), Rat(1));
}

TEST(Realize, RoundTripAgainstRankOracle) {
  for (auto [a, b] : fixtures::matrix_semigroups()) {
    auto s = sg(a, b);
    std::size_t n = 0;
    for (const auto& d : collect_semimodules(increasing_forest(s))) {
      if (d.rank() == 0 || (n++ % 5) != 0) continue;
      RealizationResult r = realize(d);
      ASSERT_EQ(rank_values(r), d.generators()) << d.to_string() << " over " << s->to_string();
    }
  }
}

TEST(Realize, NumericMatchesSymbolic) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{4, 9}, {5, 7}}) {
    auto s = sg(a, b);
    for (const auto& d : collect_semimodules(increasing_forest(s))) {
      if (d.rank() == 0) continue;
      RealizeOptions numeric;
      numeric.symbolic = false;
      RealizationResult sym = realize(d), num = realize(d, numeric);
      ASSERT_TRUE(num.verified);
      EXPECT_EQ(sym.param, num.param) << d.to_string();
    }
  }
}

TEST(Realize, FullSystemFormAlsoRealizes) {
  auto s = sg(4, 9);
  for (const auto& d : collect_semimodules(increasing_tree(s, 5))) {
    RealizeOptions opt = kaehler_opts();
    opt.run.form = SystemForm::Full;
    RealizationResult r = realize(d, opt);
    EXPECT_TRUE(r.verified) << d.to_string();
  }
}

TEST(Realize, KaehlerTreeRoundTrip) {
  auto s = sg(4, 9);
  for (const auto& d : collect_semimodules(increasing_tree(s, 5))) {
    RealizationResult r = realize(d, kaehler_opts());
    EXPECT_EQ(kaehler_semimodule(r.param).normalized.semimodule, d);
  }
}

TEST(Realize, VerificationCatchesWrongTarget) {
  RealizationResult r = realize(GammaSemimodule(sg(4, 9), {0, 5, 10}));
  r.target = GammaSemimodule(sg(4, 9), {0, 5, 11});
  try {
    verify_realization(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VerificationFailed);
  }
}

TEST(Json, RealizationRoundTrip) {
  RealizationResult r = realize(GammaSemimodule(sg(4, 9), {0, 5, 10, 15}));
  nlohmann::json j = nlohmann::json::parse(realization_to_json(r, true).dump());
  EXPECT_EQ(param_from_json(j), r.param);
  EXPECT_EQ(series_from_json(j.at("z")).terms(), r.z.terms());
  EXPECT_EQ(j.at("generators").get<std::vector<int>>(), (std::vector<int>{0, 5, 10, 15}));
  EXPECT_TRUE(j.at("verified").get<bool>());
  EXPECT_EQ(j.at("mode"), "general");
  EXPECT_FALSE(j.at("trace").empty());
  EXPECT_EQ(rat_from_json(rat_pair(Rat(-7, 3))), Rat(-7, 3));
  EXPECT_THROW(param_from_json(nlohmann::json{{"alpha", 4}}), Error);
}
