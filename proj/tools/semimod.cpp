// Command-line front end. Exit status: 0 success, 1 domain error, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <semimod/semimod.hpp>

namespace {

using nlohmann::json;
using namespace semimod;

struct Common {
  int alpha = 0;
  int beta = 0;
  std::vector<long long> gens;
  bool json_out = false;
};

void add_semigroup(CLI::App* cmd, Common& c) {
  cmd->add_option("A", c.alpha, "first generator alpha")->required();
  cmd->add_option("B", c.beta, "second generator beta")->required();
  cmd->add_flag("--json", c.json_out, "machine-readable output");
}

void add_generators(CLI::App* cmd, Common& c) {
  cmd->add_option("gens", c.gens, "semimodule generators (normalized on input)")->required();
}

std::vector<long long> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "expected comma-separated integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_gaps(const Common& c) {
  Semigroup s(c.alpha, c.beta);
  if (c.json_out) {
    json gaps = json::array();
    for (const Gap& g : s.gaps()) gaps.push_back({{"gap", g.value}, {"a", g.a}, {"b", g.b}});
    emit({{"alpha", s.alpha()}, {"beta", s.beta()}, {"conductor", s.conductor()}, {"gaps", gaps}});
  } else {
    std::cout << s.to_string() << "  conductor " << s.conductor() << "  gaps " << s.gaps().size() << '\n';
    for (const Gap& g : s.gaps()) std::cout << g.value << "  (a=" << g.a << ", b=" << g.b << ")\n";
  }
  return 0;
}

GammaSemimodule load(const Common& c) { return normalize_semimodule(Semigroup(c.alpha, c.beta), c.gens); }

int cmd_path(const Common& c, const std::string& format) {
  GammaSemimodule d = load(c);
  LatticePath p = lattice_path(d);
  if (c.json_out || format == "json") {
    json j = path_to_json(p);
    j["generators"] = d.generators();
    emit(j);
  } else if (format == "dot") {
    std::cout << path_to_dot(p);
  } else if (format == "svg") {
    std::cout << path_to_svg(p);
  } else {
    std::cout << d.to_string() << '\n' << path_to_ascii(p);
  }
  return 0;
}

int cmd_syzygy(const Common& c) {
  GammaSemimodule d = load(c);
  SyzygyData syz = syzygy(d);
  const int formula = syz.max_gen - d.semigroup().alpha() - d.semigroup().beta() + 1;
  const int scan = d.conductor_scan();
  if (c.json_out) {
    emit({{"semimodule", d.generators()},
          {"syzygy_generators", syz.generators},
          {"closed_form", syzygy_closed_form(d)},
          {"M", syz.max_gen},
          {"conductor_formula", formula},
          {"conductor_scan", scan}});
  } else {
    std::cout << "semimodule " << d.to_string() << '\n'
              << "syzygy generators [" << join(syz.generators) << "]\n"
              << "M = " << syz.max_gen << '\n'
              << "conductor: formula " << formula << ", scan " << scan << '\n';
  }
  return formula == scan ? 0 : 1;
}

int cmd_useq(const Common& c) {
  GammaSemimodule d = load(c);
  USequence u = u_sequence(d);
  if (c.json_out) {
    emit({{"semimodule", d.generators()},
          {"u", u.values},
          {"u_gap_order", u_sequence_gap_order(d)},
          {"u_closed_form", u_sequence_closed_form(d)},
          {"increasing", u.increasing}});
  } else {
    std::cout << "semimodule " << d.to_string() << "\nu = (" << join(u.values) << ")\n";
  }
  return 0;
}

int cmd_increasing(const Common& c) {
  GammaSemimodule d = load(c);
  USequence u;
  const bool inc = is_increasing(d, &u);
  const auto& g = d.generators();
  json violations = json::array();
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (g[i + 1] <= u.values[i - 1]) {
      violations.push_back({{"i", i}, {"u_i", u.values[i - 1]}, {"g_next", g[i + 1]}});
    }
  }
  if (c.json_out) {
    emit({{"semimodule", g}, {"increasing", inc}, {"u", u.values}, {"violations", violations}});
  } else {
    std::cout << d.to_string() << (inc ? " is increasing" : " is not increasing") << "; u = (" << join(u.values)
              << ")\n";
    for (const auto& v : violations) {
      std::cout << "  g_" << v["i"].get<int>() + 1 << " = " << v["g_next"] << " <= u_" << v["i"] << " = "
                << v["u_i"] << '\n';
    }
  }
  return 0;
}

int cmd_tree(const Common& c, int g1, bool dot) {
  auto s = std::make_shared<const Semigroup>(c.alpha, c.beta);
  TreeNode root = g1 > 0 ? increasing_tree(s, g1) : increasing_forest(s, true);
  const auto counts = level_counts(root);
  if (dot) {
    std::cout << tree_to_dot(root);
  } else if (c.json_out) {
    emit({{"nodes", count_nodes(root)}, {"level_counts", counts}, {"tree", tree_to_json(root)}});
  } else {
    visit(root, [](const TreeNode& n, int depth) {
      std::cout << std::string(2 * depth, ' ') << n.semimodule.to_string() << "  u=" << n.u_last << '\n';
    });
    std::cout << "nodes " << count_nodes(root) << ", per level";
    for (auto k : counts) std::cout << ' ' << k;
    std::cout << '\n';
  }
  return 0;
}

struct RealizeFlags {
  std::string gens;
  std::string mode = "general";
  std::string support;
  bool conditions_only = false;
  bool numeric = false;
  bool full_system = false;
  bool trace = false;
};

int cmd_realize(const Common& c, const RealizeFlags& f) {
  GammaSemimodule d = normalize_semimodule(Semigroup(c.alpha, c.beta), parse_int_list(f.gens, "--gens"));
  RealizeOptions opt;
  opt.run.mode = parse_mode(f.mode);
  opt.run.form = f.full_system ? SystemForm::Full : SystemForm::Reduced;
  if (!f.support.empty()) {
    for (long long i : parse_int_list(f.support, "--support")) opt.run.support.push_back(static_cast<int>(i));
  }
  opt.symbolic = !f.numeric;
  if (f.conditions_only) {
    SymbolicRun run = run_blocks(d, opt.run);
    if (c.json_out) {
      json j = conditions_to_json(run.conditions);
      j["generators"] = d.generators();
      if (f.trace) j["trace"] = trace_to_json(run.trace);
      emit(j);
    } else {
      std::cout << "conditions for " << d.to_string() << " (" << to_string(opt.run.mode) << ")\n";
      for (const auto& e : run.conditions.equalities) std::cout << "  " << e.text() << '\n';
      for (const auto& n : run.conditions.nonvanishing) std::cout << "  " << n.text() << '\n';
      for (const auto& r : run.conditions.residuals) std::cout << "  " << r.value.to_string() << " = 0\n";
      std::cout << "  free: " << join(run.conditions.free) << '\n';
    }
    return 0;
  }
  RealizationResult r = realize(d, opt);
  if (c.json_out) {
    emit(realization_to_json(r, f.trace));
  } else {
    std::cout << "realized " << d.to_string() << " (" << to_string(r.mode) << "), verified\n  y = t^" << c.beta;
    for (std::size_t i = 0; i < r.param.coeffs.size(); ++i) {
      if (!is_zero(r.param.coeffs[i])) std::cout << " + (" << r.param.coeffs[i] << ")t^" << c.beta + i + 1;
    }
    std::cout << "\n  z =";
    bool first = true;
    for (const auto& [deg, coef] : r.z.terms()) {
      std::cout << (first ? " " : " + ") << "(" << coef << ")t^" << deg;
      first = false;
    }
    std::cout << '\n';
    if (r.conditions) {
      for (const auto& e : r.conditions->equalities) std::cout << "  " << e.text() << '\n';
      for (const auto& n : r.conditions->nonvanishing) std::cout << "  " << n.text() << '\n';
    }
  }
  return 0;
}

int cmd_kaehler(const Common& c, const std::string& coeffs) {
  Semigroup s(c.alpha, c.beta);
  std::map<int, Rat> terms;
  if (!coeffs.empty()) {
    std::stringstream ss(coeffs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--coeffs", "expected exponent:value, got '" + item + "'");
      int k = 0;
      try {
        k = std::stoi(item.substr(0, colon));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--coeffs", "bad exponent in '" + item + "'");
      }
      terms[k] = parse_rat(item.substr(colon + 1));
    }
  }
  PuiseuxParam p = PuiseuxParam::from_exponents(s, terms);
  KaehlerValues kv = kaehler_semimodule(p);
  json j = value_set_to_json(kv.normalized);
  j["differential_generators"] = kv.differential_generators();
  j["increasing"] = is_increasing(kv.normalized.semimodule);
  if (c.json_out) {
    emit(j);
  } else {
    std::cout << "Kaehler semimodule " << kv.normalized.semimodule.to_string() << ", conductor "
              << j["conductor"] << ", differential values [" << join(kv.differential_generators()) << "]\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, bool json_out) {
  json j;
  try {
    if (path == "-") {
      j = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
      j = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  PuiseuxParam p = param_from_json(j);
  auto s = std::make_shared<const Semigroup>(p.alpha, p.beta);
  TruncSeries<Rat> z = series_from_json(j.at("z"));
  std::vector<long long> target_gens;
  for (const auto& g : j.at("generators")) target_gens.push_back(g.get<long long>());
  GammaSemimodule target = normalize_semimodule(s, target_gens);
  ValueSet vs = value_set(p, {one_series(), z});
  const bool ok = vs.semimodule == target;
  if (json_out) {
    emit({{"target", target.generators()}, {"computed", vs.semimodule.generators()}, {"match", ok}});
  } else {
    std::cout << (ok ? "OK " : "MISMATCH ") << "target " << target.to_string() << ", v(R+zR) = "
              << vs.semimodule.to_string() << '\n';
  }
  if (!ok) {
    std::cerr << to_string(ErrorKind::VerificationFailed) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semimodules over two-generator numerical semigroups"};
  app.require_subcommand(1);
  Common c;

  auto* gaps = app.add_subcommand("gaps", "gaps of <A,B> with lattice coordinates");
  add_semigroup(gaps, c);

  std::string path_format = "ascii";
  auto* path = app.add_subcommand("path", "lattice path of a semimodule");
  add_semigroup(path, c);
  add_generators(path, c);
  auto* fmt = path->add_option_group("format");
  fmt->add_flag_callback("--dot", [&] { path_format = "dot"; }, "Graphviz output");
  fmt->add_flag_callback("--svg", [&] { path_format = "svg"; }, "SVG output");
  fmt->require_option(0, 1);

  auto* syz = app.add_subcommand("syzygy", "syzygy generators, M and conductor");
  add_semigroup(syz, c);
  add_generators(syz, c);

  auto* useq = app.add_subcommand("useq", "u-sequence");
  add_semigroup(useq, c);
  add_generators(useq, c);

  auto* inc = app.add_subcommand("increasing", "increasing test with certificate");
  add_semigroup(inc, c);
  add_generators(inc, c);

  int g1 = 0;
  bool tree_dot = false;
  auto* tree = app.add_subcommand("tree", "tree of increasing semimodules");
  add_semigroup(tree, c);
  tree->add_option("--g1", g1, "first nonzero generator (default: all)");
  tree->add_flag("--dot", tree_dot, "Graphviz output");

  RealizeFlags rf;
  auto* real = app.add_subcommand("realize", "construct a curve and z with v(R+zR) = L");
  add_semigroup(real, c);
  real->add_option("--gens", rf.gens, "generators 0,g1,...")->required();
  real->add_option("--mode", rf.mode, "general or kaehler")->check(CLI::IsMember({"general", "kaehler"}));
  real->add_flag("--conditions-only", rf.conditions_only, "print the condition system only");
  real->add_option("--support", rf.support, "variable indices allowed to be nonzero");
  real->add_flag("--numeric", rf.numeric, "skip the symbolic condition system");
  real->add_flag("--full-system", rf.full_system, "impose vanishing at every position with a variable");
  real->add_flag("--trace", rf.trace, "include the step trace");

  std::string coeffs;
  auto* kae = app.add_subcommand("kaehler", "Kaehler semimodule of (t^A, t^B + sum c_i t^i)");
  add_semigroup(kae, c);
  kae->add_option("--coeffs", coeffs, "exponent:value pairs, e.g. 10:1,11:19/18");

  std::string verify_path;
  bool verify_json = false;
  auto* ver = app.add_subcommand("verify", "recompute v(R+zR) for a realization JSON");
  ver->add_option("file", verify_path, "realization JSON ('-' for stdin)")->required();
  ver->add_flag("--json", verify_json, "machine-readable output");

  try {
    app.parse(argc, argv);
    if (*gaps) return cmd_gaps(c);
    if (*path) return cmd_path(c, path_format);
    if (*syz) return cmd_syzygy(c);
    if (*useq) return cmd_useq(c);
    if (*inc) return cmd_increasing(c);
    if (*tree) return cmd_tree(c, g1, tree_dot);
    if (*real) return cmd_realize(c, rf);
    if (*kae) return cmd_kaehler(c, coeffs);
    if (*ver) return cmd_verify(verify_path, verify_json);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 2;
}
