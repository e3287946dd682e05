// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <semimod/semimod.hpp>

#include "../tests/support/fixtures.hpp"

using namespace semimod;
namespace fx = semimod::fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string vec(const std::vector<int>& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

std::shared_ptr<const Semigroup> sg(int a, int b) { return std::make_shared<const Semigroup>(a, b); }

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  GammaSemimodule d(sg(5, 7), {0, 6, 8, 9});
  SyzygyData syz = syzygy(d);
  const double t = ms_since(t0);
  o.require(syz.generators == std::vector<int>{13, 14, 15, 16}, "Syz = " + vec(syz.generators));
  o.require(t < 10.0, "took " + std::to_string(t) + " ms");
  if (o.ok) o.detail = "Syz([0,6,8,9]) = {13,14,15,16} in " + std::to_string(t) + " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto t0 = Clock::now();
  auto s = sg(7, 9);
  GammaSemimodule d(s, {0, 5, 20, 31});
  USequence u = u_sequence(d);
  SyzygyData syz = syzygy(d);
  const int formula = syz.max_gen - 7 - 9 + 1;
  const int scan = d.conductor_scan();
  const auto after05 = candidate_generators(GammaSemimodule(s, {0, 5}));
  const auto after0520 = candidate_generators(GammaSemimodule(s, {0, 5, 20}));
  const double t = ms_since(t0);
  o.require(u.values == std::vector<int>{14, 27, 38}, "u = " + vec(u.values));
  o.require(syz.max_gen == 40, "M = " + std::to_string(syz.max_gen));
  o.require(formula == 25 && scan == 25, "conductor " + std::to_string(formula) + "/" + std::to_string(scan));
  o.require(after05.size() == 8, "candidates after [0,5]: " + std::to_string(after05.size()));
  o.require(after0520.size() == 1, "candidates after [0,5,20]: " + std::to_string(after0520.size()));
  o.require(t < 50.0, "took " + std::to_string(t) + " ms");
  if (o.ok) o.detail = "u=(14,27,38), M=40, c=25, candidates 8 and 1 in " + std::to_string(t) + " ms";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto t0 = Clock::now();
  TreeNode root = increasing_tree(sg(4, 9), 5);
  const double t = ms_since(t0);
  std::set<std::vector<int>> got;
  for (const auto& d : collect_semimodules(root)) got.insert(d.generators());
  const std::set<std::vector<int>> want{{0, 5}, {0, 5, 10}, {0, 5, 11}, {0, 5, 15}, {0, 5, 19}, {0, 5, 10, 15}};
  o.require(count_nodes(root) == 6 && got == want, "tree has " + std::to_string(count_nodes(root)) + " nodes");
  o.require(t < 50.0, "took " + std::to_string(t) + " ms");
  if (o.ok) o.detail = "6 nodes as listed in " + std::to_string(t) + " ms";
  return o;
}

Outcome criterion4() {
  Outcome o;
  Semigroup s(4, 9);
  struct Case {
    std::map<int, Rat> terms;
    std::vector<int> want;
  };
  const std::vector<Case> cases{
      {{}, {0, 5}},
      {{{10, Rat(1)}, {11, Rat(19, 18)}}, {0, 5, 10}},
      {{{10, Rat(1)}}, {0, 5, 10, 15}},
      {{{11, Rat(1)}}, {0, 5, 11}},
      {{{15, Rat(1)}}, {0, 5, 15}},
      {{{19, Rat(1)}}, {0, 5, 19}},
  };
  double worst = 0;
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    KaehlerValues kv = kaehler_semimodule(PuiseuxParam::from_exponents(s, c.terms));
    const double t = ms_since(t0);
    worst = std::max(worst, t);
    o.require(kv.normalized.semimodule.generators() == c.want,
              "expected " + vec(c.want) + ", got " + kv.normalized.semimodule.to_string());
    o.require(t < 1000.0, "case " + vec(c.want) + " took " + std::to_string(t) + " ms");
  }
  if (o.ok) o.detail = "6/6 strata reproduced, slowest " + std::to_string(worst) + " ms";
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t runs = 0;
  for (auto [a, b] : fx::matrix_semigroups()) {
    auto s = sg(a, b);
    for (const auto& d : collect_semimodules(increasing_forest(s))) {
      if (d.generators().size() < 2) continue;
      try {
        RealizationResult r = realize(d);
        ValueSet vs = value_set(r.param, {one_series(), r.z});
        o.require(r.verified && vs.semimodule == d, "round trip failed for " + d.to_string());
      } catch (const Error& e) {
        o.require(false, d.to_string() + " over " + s->to_string() + ": " + e.what());
      }
      ++runs;
    }
  }
  bool found = false;
  for (const auto& d : collect_semimodules(increasing_tree(sg(4, 9), 5))) {
    RealizeOptions opt;
    opt.run.mode = Mode::Kaehler;
    try {
      RealizationResult r = realize(d, opt);
      o.require(r.verified, "kaehler round trip failed for " + d.to_string());
      if (d.generators() == std::vector<int>{0, 5, 10}) {
        for (const auto& e : r.conditions->equalities) found = found || e.text() == "X_2 = 19/18*X_1^2";
      }
    } catch (const Error& e) {
      o.require(false, "kaehler " + d.to_string() + ": " + e.what());
    }
    ++runs;
  }
  o.require(found, "condition X_2 = 19/18*X_1^2 not emitted");
  const double t = ms_since(t0);
  o.require(t < 120000.0, "took " + std::to_string(t) + " ms");
  if (o.ok) {
    o.detail = std::to_string(runs) + " realizations verified, X_2 = 19/18*X_1^2 emitted, " +
               std::to_string(t / 1000.0) + " s";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t semimodules = 0, semigroups = 0;
  for (auto [a, b] : fx::small_semigroups(80)) {
    auto s = sg(a, b);
    ++semigroups;
    for (const auto& d : all_semimodules(s)) {
      ++semimodules;
      o.require(u_sequence_gap_order(d) == u_sequence_closed_form(d), "(a) u-sequence differs for " + d.to_string());
      const int formula = syzygy(d).max_gen - a - b + 1;
      o.require(formula == d.conductor_scan(), "(b) conductor differs for " + d.to_string());
    }
    std::vector<GammaSemimodule> tree = collect_semimodules(increasing_forest(s));
    std::sort(tree.begin(), tree.end(), [](const auto& x, const auto& y) { return x.generators() < y.generators(); });
    o.require(tree == brute_force_increasing(s), "(c) tree differs from brute force over " + s->to_string());
  }
  std::mt19937 rng(20261016);
  std::size_t curves = 0;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{4, 9}, {5, 7}}) {
    Semigroup s(a, b);
    for (int i = 0; i < 100; ++i) {
      PuiseuxParam p = fx::random_param(s, rng);
      TruncSeries<Rat> z = dy_dx(p);
      ++curves;
      o.require(value_set(p, {one_series(), z}).semimodule == delorme_reduction(p, z).value_set.semimodule,
                "(d) oracles disagree over " + s.to_string());
    }
  }
  if (o.ok) {
    o.detail = "(a)(b) " + std::to_string(semimodules) + " semimodules, (c) " + std::to_string(semigroups) +
               " semigroups, (d) " + std::to_string(curves) + " curves";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937 rng(7);
  int pairs = 0;
  for (auto [a, b] : fx::matrix_semigroups()) {
    Semigroup s(a, b);
    for (int i = 0; i < 200; ++i) {
      auto [p, q] = fx::random_gap_pair(s, rng);
      DelormeSplit split = delorme_split(s, p, q);
      auto [lo, hi] = delorme_window(s, p, q);
      ++pairs;
      o.require(delorme_identities_hold(s, p, q, split, lo, hi),
                "identities fail for p=" + std::to_string(p) + ", q=" + std::to_string(q) + " over " + s.to_string());
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937 rng(8);
  int curves = 0;
  for (auto [a, b] : fx::matrix_semigroups()) {
    Semigroup s(a, b);
    for (int i = 0; i < 100; ++i) {
      PuiseuxParam p = fx::random_param(s, rng);
      ValueSet vs = kaehler_semimodule(p).normalized;
      ++curves;
      o.require(is_increasing(vs.semimodule), "not increasing: " + vs.semimodule.to_string());
    }
  }
  if (o.ok) o.detail = std::to_string(curves) + " curves";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 syzygy golden", criterion1},
      {"2 <7,9> golden", criterion2},
      {"3 <4,9> tree golden", criterion3},
      {"4 Kaehler stratification", criterion4},
      {"5 realization round trip", criterion5},
      {"6 oracle equivalences", criterion6},
      {"7 Delorme identities", criterion7},
      {"8 Kaehler outputs increasing", criterion8},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
