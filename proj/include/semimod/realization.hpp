#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "mpoly.hpp"
#include "rational.hpp"
#include "semigroup.hpp"
#include "semimodule.hpp"
#include "series.hpp"
#include "valuation.hpp"

namespace semimod {

enum class Mode { General, Kaehler };

inline std::string to_string(Mode m) { return m == Mode::General ? "general" : "kaehler"; }

inline Mode parse_mode(const std::string& text) {
  if (text == "general") return Mode::General;
  if (text == "kaehler") return Mode::Kaehler;
  throw Error(ErrorKind::BadMode, "unknown mode '" + text + "'");
}

/// Reduced system: only positions outside E_{k-1} carry equalities. Full
/// system: every position with a variable inside a block carries one.
enum class SystemForm { Reduced, Full };

/// Block layout of the construction. Vectors are indexed by the generator
/// index i (entry 0 of `u` and `shifts` is an unused placeholder).
struct Schedule {
  std::vector<int> generators;  ///< g_0..g_s
  std::vector<int> u;           ///< u_1..u_s at indices 1..s
  std::vector<int> sigma;       ///< sigma_0..sigma_s
  std::vector<int> shifts;      ///< h_1..h_s at indices 1..s
  std::vector<std::pair<int, int>> blocks;  ///< I_i = [sigma_{i-1}, sigma_i] at indices 2..s
  int final_shift = 0;          ///< u_s - sigma_s
  int final_cap = 0;            ///< c_s + alpha*beta
  int coefficient_count = 0;    ///< b

  int s() const noexcept { return static_cast<int>(generators.size()) - 1; }
};

inline Schedule schedule(const GammaSemimodule& l) {
  const Semigroup& sg = l.semigroup();
  USequence useq;
  if (!is_increasing(l, &useq)) throw Error(ErrorKind::NotIncreasing, l.to_string() + " is not increasing");
  Schedule out;
  out.generators = l.generators();
  out.coefficient_count = PuiseuxParam::coefficient_count(sg);
  const int s = out.s();
  out.u.assign(s + 1, 0);
  for (int i = 1; i <= s; ++i) out.u[i] = useq.values[i - 1];
  out.sigma.assign(s + 1, 0);
  for (int i = 1; i < s; ++i) out.sigma[i + 1] = out.sigma[i] + (out.generators[i + 1] - out.u[i]);
  out.shifts.assign(s + 1, 0);
  for (int i = 1; i <= s; ++i) out.shifts[i] = out.generators[i] - out.sigma[i];
  out.blocks.assign(s + 1, {0, 0});
  for (int i = 2; i <= s; ++i) out.blocks[i] = {out.sigma[i - 1], out.sigma[i]};
  if (s >= 1) {
    out.final_shift = out.u[s] - out.sigma[s];
    out.final_cap = c_sequence(l).values.back() + sg.product();
  }
  return out;
}

inline Schedule schedule(const Semigroup& s, const GammaSemimodule& l) {
  if (!(s == l.semigroup())) throw Error(ErrorKind::InternalInconsistency, "semimodule over a different semigroup");
  return schedule(l);
}

/// z = T^{g_1}(c_0 + sum c_i X_i T^i).
struct GeneratorCoefficients {
  Rat c0;
  std::vector<Rat> c;  ///< c[i] for i = 1..b; c[0] unused
};

/// General mode uses c_i = 1 + 1/(i+1): constant c_i = 1 makes T^{beta-g_1} z
/// coincide with Y whenever beta - g_1 is a multiple of alpha.
inline GeneratorCoefficients generator_coefficients(const Semigroup& s, int g1, Mode mode) {
  const int b = PuiseuxParam::coefficient_count(s);
  GeneratorCoefficients out;
  out.c.assign(b + 1, Rat(0));
  if (mode == Mode::Kaehler) {
    if (g1 != s.beta() - s.alpha()) {
      throw Error(ErrorKind::BadMode, "kaehler mode needs g_1 = beta - alpha = " +
                                          std::to_string(s.beta() - s.alpha()));
    }
    out.c0 = Rat(s.beta(), s.alpha());
    out.c0.canonicalize();
    for (int i = 1; i <= b; ++i) {
      out.c[i] = Rat(i + s.beta(), s.alpha());
      out.c[i].canonicalize();
    }
  } else {
    out.c0 = 1;
    for (int i = 1; i <= b; ++i) {
      out.c[i] = Rat(i + 2, i + 1);
      out.c[i].canonicalize();
    }
  }
  return out;
}

/// Truncation degree of the symbolic generators: 2*alpha*beta + b.
inline int realization_truncation(const Semigroup& s) {
  return 2 * s.product() + PuiseuxParam::coefficient_count(s);
}

/// Y = T^beta (1 + sum X_i T^i) and z = T^{g_1}(c_0 + sum c_i X_i T^i).
inline std::pair<TruncSeries<MPoly>, TruncSeries<MPoly>> build_generators(const Semigroup& s,
                                                                          const GammaSemimodule& l,
                                                                          Mode mode) {
  if (l.generators().size() < 2) throw Error(ErrorKind::BadMode, "no nonzero generator");
  const int b = PuiseuxParam::coefficient_count(s);
  const int d = realization_truncation(s);
  const int g1 = l.generators()[1];
  GeneratorCoefficients gc = generator_coefficients(s, g1, mode);
  TruncSeries<MPoly> y(d, b), z(d, b);
  y.set(s.beta(), MPoly(b, Rat(1)));
  z.set(g1, MPoly(b, gc.c0));
  for (int i = 1; i <= b; ++i) {
    y.set(s.beta() + i, MPoly::var(b, i));
    z.set(g1 + i, MPoly::var(b, i) * gc.c[i]);
  }
  return {std::move(y), std::move(z)};
}

/// X_var = numerator / denominator, both in variables of lower index.
struct Equality {
  int var = 0;
  MPoly numerator;
  MPoly denominator;

  std::string rhs() const {
    if (denominator.is_constant()) return (numerator * (Rat(1) / denominator.constant_value())).to_string();
    return "(" + numerator.to_string() + ")/(" + denominator.to_string() + ")";
  }
  std::string text() const { return "X_" + std::to_string(var) + " = " + rhs(); }
};

/// A_k != 0 for the leading coefficient A_k of the k-th generator. When the
/// variable exists, this excludes X_var = numerator / denominator.
struct NonVanishing {
  int block = 0;
  int var = 0;  ///< 0 when no variable sits at position sigma_k
  MPoly leading;
  MPoly numerator;
  MPoly denominator;

  std::string text() const {
    if (var == 0 || denominator.is_zero()) return leading.to_string() + " != 0";
    Equality as_eq{var, numerator, denominator};
    return "X_" + std::to_string(var) + " != " + as_eq.rhs();
  }
};

/// A coefficient that must vanish at a position without a variable.
struct Residual {
  int position = 0;
  int degree = 0;
  MPoly value;
};

struct ConditionSystem {
  int arity = 0;
  std::vector<Equality> equalities;
  std::vector<NonVanishing> nonvanishing;
  std::vector<int> free;
  std::vector<Residual> residuals;
  std::vector<int> support;  ///< empty means all of 1..b

  const Equality* equality_for(int var) const {
    for (const auto& e : equalities) {
      if (e.var == var) return &e;
    }
    return nullptr;
  }
};

enum class StepKind { Start, Reduce, Vanish, NonVanish };

inline std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Start: return "start";
    case StepKind::Reduce: return "reduce";
    case StepKind::Vanish: return "vanish";
    case StepKind::NonVanish: return "nonvanish";
  }
  return "?";
}

struct TraceStep {
  int block = 0;
  int position = 0;
  int degree = 0;
  StepKind kind = StepKind::Start;
  int reducer = -1;     ///< generator index used by a reduction
  std::string lc;       ///< leading coefficient before the step's action
};

/// Values tried for a nonvanishing variable, and the value of free ones.
struct FreePolicy {
  Rat free_value = 0;
  int first = 1;
  int last = 16;
};

namespace detail {

/// c0 + c1 * X where X is the single variable currently being decided.
struct Affine {
  Rat c0 = 0;
  Rat c1 = 0;
};

inline bool is_zero(const Affine& a) { return sgn(a.c0) == 0 && sgn(a.c1) == 0; }
inline Affine operator+(const Affine& x, const Affine& y) { return {x.c0 + y.c0, x.c1 + y.c1}; }
inline Affine operator-(const Affine& x, const Affine& y) { return {x.c0 - y.c0, x.c1 - y.c1}; }
inline Affine& operator+=(Affine& x, const Affine& y) {
  x.c0 += y.c0;
  if (sgn(y.c1) != 0) x.c1 += y.c1;
  return x;
}
inline Affine operator*(const Affine& x, const Affine& y) {
  const bool xs = sgn(x.c1) != 0, ys = sgn(y.c1) != 0;
  if (xs && ys) throw Error(ErrorKind::InternalInconsistency, "coefficient is not affine in the active variable");
  Affine out;
  out.c0 = x.c0 * y.c0;
  if (xs) out.c1 = x.c1 * y.c0;
  if (ys) out.c1 = x.c0 * y.c1;
  return out;
}

enum class VarState : char { Open, Active, Fixed };

/// Bookkeeping shared by both domains: which positions carry a variable and
/// whether it is still undecided.
class VarTable {
 public:
  VarTable(int b, const std::vector<int>& support) : b_(b), state_(b + 1, VarState::Open), value_(b + 1, Rat(0)) {
    if (!support.empty()) {
      std::vector<char> keep(b + 1, 0);
      for (int i : support) {
        if (i >= 1 && i <= b) keep[i] = 1;
      }
      for (int i = 1; i <= b; ++i) {
        if (!keep[i]) state_[i] = VarState::Fixed;
      }
    }
  }

  int arity() const noexcept { return b_; }
  bool is_open(int i) const noexcept { return i >= 1 && i <= b_ && state_[i] == VarState::Open; }
  VarState state(int i) const { return state_.at(i); }
  const Rat& value(int i) const { return value_.at(i); }

  void activate(int i) {
    if (is_open(i)) state_[i] = VarState::Active;
  }
  void fix(int i, const Rat& v) {
    if (i < 1 || i > b_) return;
    state_[i] = VarState::Fixed;
    value_[i] = v;
  }
  std::vector<Rat> values() const { return value_; }

 private:
  int b_;
  std::vector<VarState> state_;
  std::vector<Rat> value_;
};

inline void structure_violation(int var, int position) {
  throw Error(ErrorKind::InternalInconsistency, "coefficient at position " + std::to_string(position) +
                                                    " uses undecided X_" + std::to_string(var));
}

/// Thrown inside a numeric run when a choice made earlier leaves no valid
/// value for a later variable.
struct Dead {
  int position;
};

/// Exact rational evaluation; each coefficient is affine in the variable
/// being decided, which is resolved immediately after the step.
class NumericDomain {
 public:
  using Value = Affine;

  NumericDomain(VarTable vars, FreePolicy policy, std::map<int, int> first_try)
      : vars_(std::move(vars)), policy_(std::move(policy)), first_try_(std::move(first_try)) {}

  Value zero() const { return {}; }
  Value constant(const Rat& r) const { return {r, Rat(0)}; }
  Value var(int i, const Rat& scale, int position) const {
    if (i > vars_.arity()) return {};
    switch (vars_.state(i)) {
      case VarState::Fixed: return {scale * vars_.value(i), Rat(0)};
      case VarState::Active: return {Rat(0), scale};
      case VarState::Open: structure_violation(i, position);
    }
    return {};
  }
  static bool pending(const Value& v) { return sgn(v.c1) != 0; }
  static void patch(Value& v, const Rat& x) {
    v.c0 += v.c1 * x;
    v.c1 = 0;
  }
  static std::string render(const Value& v) {
    if (sgn(v.c1) == 0) return semimod::to_string(v.c0);
    return semimod::to_string(v.c1) + "*X + " + semimod::to_string(v.c0);
  }

  void fix_free(int j) {
    if (vars_.is_open(j)) vars_.fix(j, policy_.free_value);
  }
  void activate(int j) { vars_.activate(j); }

  std::optional<Rat> vanish(int j, const Value& lc, int degree) {
    (void)degree;
    if (j >= 1 && j <= vars_.arity() && vars_.state(j) == VarState::Active) {
      if (sgn(lc.c1) == 0 && sgn(lc.c0) != 0) throw Dead{j};
      Rat x = sgn(lc.c1) != 0 ? Rat(-lc.c0 / lc.c1) : policy_.free_value;
      vars_.fix(j, x);
      return x;
    }
    if (sgn(lc.c0) != 0) throw Dead{j};
    return std::nullopt;
  }

  std::optional<Rat> nonvanish(int k, int j, const Value& lc) {
    (void)k;
    if (j >= 1 && j <= vars_.arity() && vars_.state(j) == VarState::Active) {
      auto it = first_try_.find(j);
      const int start = it == first_try_.end() ? policy_.first : it->second;
      for (int v = start; v <= policy_.last; ++v) {
        if (sgn(lc.c0 + lc.c1 * v) != 0) {
          vars_.fix(j, Rat(v));
          chosen_[j] = v;
          return Rat(v);
        }
      }
      throw Dead{j};
    }
    if (sgn(lc.c0) == 0) throw Dead{j};
    return std::nullopt;
  }

  const VarTable& vars() const noexcept { return vars_; }
  const std::map<int, int>& chosen() const noexcept { return chosen_; }

 private:
  VarTable vars_;
  FreePolicy policy_;
  std::map<int, int> first_try_;
  std::map<int, int> chosen_;
};

/// Symbolic evaluation: active variables stay as X_i and every decision is
/// recorded in a ConditionSystem.
class SymbolicDomain {
 public:
  using Value = MPoly;

  SymbolicDomain(VarTable vars, std::size_t max_terms) : vars_(std::move(vars)), max_terms_(max_terms) {
    cs_.arity = vars_.arity();
  }

  Value zero() const { return MPoly(vars_.arity()); }
  Value constant(const Rat& r) const { return MPoly(vars_.arity(), r); }
  Value var(int i, const Rat& scale, int position) const {
    if (i > vars_.arity()) return zero();
    switch (vars_.state(i)) {
      case VarState::Fixed: return constant(scale * vars_.value(i));
      case VarState::Active: return MPoly::var(vars_.arity(), i) * scale;
      case VarState::Open: structure_violation(i, position);
    }
    return zero();
  }
  static bool pending(const Value&) { return false; }
  static void patch(Value&, const Rat&) {}
  static std::string render(const Value& v) {
    std::string s = v.to_string();
    if (s.size() > 240) s = s.substr(0, 237) + "...";
    return s;
  }
  void guard(const Value& v) const {
    if (v.terms().size() > max_terms_) {
      throw Error(ErrorKind::TooLarge, "symbolic coefficient exceeds " + std::to_string(max_terms_) + " terms");
    }
  }

  void fix_free(int j) {
    if (vars_.is_open(j)) {
      vars_.fix(j, Rat(0));
      cs_.free.push_back(j);
    }
  }
  void activate(int j) { vars_.activate(j); }

  std::optional<Rat> vanish(int j, const Value& lc, int degree) {
    const bool has_var = j >= 1 && j <= vars_.arity() && vars_.state(j) == VarState::Active;
    if (has_var) {
      auto split = checked_split(lc, j);
      if (!split.first.is_zero()) {
        cs_.equalities.push_back({j, -split.second, split.first});
        return std::nullopt;
      }
      cs_.free.push_back(j);
      if (!split.second.is_zero()) cs_.residuals.push_back({j, degree, split.second});
      return std::nullopt;
    }
    if (lc.max_var() > std::max(j, 0)) structure_violation(lc.max_var(), j);
    if (!lc.is_zero()) cs_.residuals.push_back({j, degree, lc});
    return std::nullopt;
  }

  std::optional<Rat> nonvanish(int k, int j, const Value& lc) {
    const bool has_var = j >= 1 && j <= vars_.arity() && vars_.state(j) == VarState::Active;
    if (has_var) {
      auto split = checked_split(lc, j);
      cs_.nonvanishing.push_back({k, j, lc, -split.second, split.first});
    } else {
      if (lc.max_var() > std::max(j, 0)) structure_violation(lc.max_var(), j);
      cs_.nonvanishing.push_back({k, 0, lc, MPoly(vars_.arity()), MPoly(vars_.arity())});
    }
    return std::nullopt;
  }

  ConditionSystem finish() {
    for (int i = 1; i <= vars_.arity(); ++i) {
      if (vars_.is_open(i)) cs_.free.push_back(i);
    }
    std::sort(cs_.free.begin(), cs_.free.end());
    return std::move(cs_);
  }

  const VarTable& vars() const noexcept { return vars_; }

 private:
  std::pair<MPoly, MPoly> checked_split(const MPoly& lc, int j) const {
    if (lc.max_var() > j) structure_violation(lc.max_var(), j);
    auto split = lc.split_affine(j);
    if (!split) throw Error(ErrorKind::InternalInconsistency, "coefficient is not affine in X_" + std::to_string(j));
    return *split;
  }

  VarTable vars_;
  std::size_t max_terms_;
  ConditionSystem cs_;
};

/// Lazily evaluated series expressions. Coefficients are computed degree by
/// degree on first request and cached.
template <class Domain>
class SeriesGraph {
 public:
  using V = typename Domain::Value;
  enum class Kind { One, Y, Z, Shift, Product, Combo, Drop };

  SeriesGraph(Domain& dom, int beta, int g1, GeneratorCoefficients gc)
      : dom_(dom), beta_(beta), g1_(g1), gc_(std::move(gc)) {}

  int one() { return add({Kind::One, 0}); }
  int y() { return add({Kind::Y, beta_}); }
  int z() { return add({Kind::Z, g1_}); }
  int shift(int a, int k) { return k == 0 ? a : add({Kind::Shift, nodes_[a].start + k, a, -1, k}); }
  int product(int a, int b) { return add({Kind::Product, nodes_[a].start + nodes_[b].start, a, b}); }
  int combo(int a, const V& s1, int b, const V& s2) {
    Node n{Kind::Combo, std::min(nodes_[a].start, nodes_[b].start), a, b};
    n.s1 = s1;
    n.s2 = s2;
    return add(std::move(n));
  }
  int drop(int a, int degree) { return add({Kind::Drop, nodes_[a].start, a, -1, degree}); }

  const V& coeff(int id, int d) {
    if (d < nodes_[id].start) return zero_;
    ensure(id, d);
    return nodes_[id].cache[d - nodes_[id].start];
  }

  void set_position(int j) noexcept { position_ = j; }

  /// Substitutes the decided value into every cached entry that still
  /// depends on the active variable.
  void resolve(const Rat& x) {
    for (auto [id, idx] : pending_) Domain::patch(nodes_[id].cache[idx], x);
    pending_.clear();
  }

 private:
  struct Node {
    Kind kind;
    int start;
    int a = -1;
    int b = -1;
    int k = 0;
    V s1{};
    V s2{};
    std::vector<V> cache{};
  };

  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void ensure(int id, int d) {
    while (static_cast<int>(nodes_[id].cache.size()) <= d - nodes_[id].start) {
      const int deg = nodes_[id].start + static_cast<int>(nodes_[id].cache.size());
      V v = compute(id, deg);
      if constexpr (requires(Domain& dm, const V& x) { dm.guard(x); }) dom_.guard(v);
      if (Domain::pending(v)) pending_.emplace_back(id, static_cast<int>(nodes_[id].cache.size()));
      nodes_[id].cache.push_back(std::move(v));
    }
  }

  V compute(int id, int d) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::One:
        return d == 0 ? dom_.constant(Rat(1)) : dom_.zero();
      case Kind::Y: {
        const int i = d - beta_;
        if (i == 0) return dom_.constant(Rat(1));
        return dom_.var(i, Rat(1), position_);
      }
      case Kind::Z: {
        const int i = d - g1_;
        if (i == 0) return dom_.constant(gc_.c0);
        if (i >= static_cast<int>(gc_.c.size())) return dom_.zero();
        return dom_.var(i, gc_.c[i], position_);
      }
      case Kind::Shift: {
        const int a = n.a, k = n.k;
        return coeff(a, d - k);
      }
      case Kind::Product: {
        const int a = n.a, b = n.b;
        const int sa = nodes_[a].start, sb = nodes_[b].start;
        ensure(a, d - sb);
        ensure(b, d - sa);
        V acc = dom_.zero();
        const auto& ca = nodes_[a].cache;
        const auto& cb = nodes_[b].cache;
        for (int i = sa; i <= d - sb; ++i) {
          const V& x = ca[i - sa];
          if (is_zero(x)) continue;
          const V& y = cb[d - i - sb];
          if (is_zero(y)) continue;
          acc += x * y;
        }
        return acc;
      }
      case Kind::Combo: {
        const int a = n.a, b = n.b;
        V x = coeff(a, d);
        V y = coeff(b, d);
        const Node& m = nodes_[id];
        return m.s1 * x - m.s2 * y;
      }
      case Kind::Drop: {
        if (d == n.k) return dom_.zero();
        const int a = n.a;
        return coeff(a, d);
      }
    }
    return dom_.zero();
  }

  Domain& dom_;
  int beta_;
  int g1_;
  GeneratorCoefficients gc_;
  std::vector<Node> nodes_;
  std::vector<std::pair<int, int>> pending_;
  V zero_ = dom_.zero();
  int position_ = 0;
};

/// Runs the block recursion over one domain.
template <class Domain>
class BlockRunner {
 public:
  using V = typename Domain::Value;

  BlockRunner(const Semigroup& s, const Schedule& sch, const GeneratorCoefficients& gc, Domain& dom,
              SystemForm form)
      : s_(s), sch_(sch), dom_(dom), form_(form), graph_(dom, s.beta(), sch.generators.at(1), gc) {}

  void run() {
    const int n = sch_.s();
    omega_.push_back(graph_.one());
    lead_.push_back(dom_.constant(Rat(1)));
    omega_.push_back(graph_.z());
    lead_.push_back(graph_.coeff(omega_[1], sch_.generators[1]));
    y_node_ = graph_.y();
    for (int k = 2; k <= n + 1; ++k) run_block(k);
  }

  const std::vector<TraceStep>& trace() const noexcept { return trace_; }
  const std::vector<V>& leading() const noexcept { return lead_; }

 private:
  bool in_level(int e, int level, int* reducer) const {
    for (int m = 0; m <= level; ++m) {
      if (s_.contains(static_cast<long long>(e) - sch_.generators[m])) {
        if (reducer) *reducer = m;
        return true;
      }
    }
    return false;
  }

  int y_power(int e) {
    while (static_cast<int>(ypow_.size()) < e) {
      ypow_.push_back(ypow_.empty() ? y_node_ : graph_.product(ypow_.back(), y_node_));
    }
    return ypow_[e - 1];
  }

  /// P(e - g_m) * omega_m.
  int multiple(int m, int e) {
    Decomposition dec = s_.decompose(static_cast<long long>(e) - sch_.generators[m]);
    const int e2 = static_cast<int>(dec.e2);
    int base = omega_[m];
    if (e2 > 0) {
      auto key = std::make_pair(m, e2);
      auto it = products_.find(key);
      if (it == products_.end()) {
        const int node = m == 0 ? y_power(e2) : graph_.product(y_power(e2), omega_[m]);
        it = products_.emplace(key, node).first;
      }
      base = it->second;
    }
    return graph_.shift(base, static_cast<int>(dec.e1) * s_.alpha());
  }

  void reduce(int& u, int e, int m) {
    V lc = graph_.coeff(u, e);
    if (is_zero(lc)) return;
    u = graph_.combo(u, lead_[m], multiple(m, e), lc);
  }

  void record(int block, int j, int e, StepKind kind, int reducer, const V& lc) {
    trace_.push_back({block, j, e, kind, reducer, Domain::render(lc)});
  }

  bool has_variable(int j) const { return j >= 1 && j <= sch_.coefficient_count; }

  void run_block(int k) {
    const int n = sch_.s();
    const int prev = k - 1;
    const bool last = k == n + 1;
    const int shift = last ? sch_.final_shift : sch_.shifts[k];
    const int j0 = sch_.sigma[prev];
    const int j_end = last ? sch_.final_cap - shift : sch_.sigma[k];

    const int e0 = sch_.u[prev];
    graph_.set_position(j0);
    int u = multiple(prev, e0);
    int m = -1;
    if (!in_level(e0, prev - 1, &m)) throw Error(ErrorKind::InternalInconsistency, "u_k outside E_{k-1}");
    record(k, j0, e0, StepKind::Start, m, graph_.coeff(u, e0));
    reduce(u, e0, m);

    for (int j = j0 + 1; j <= j_end; ++j) {
      const int e = shift + j;
      graph_.set_position(j);
      if (!last && j == sch_.sigma[k]) {
        dom_.activate(j);
        V lc = graph_.coeff(u, e);
        auto x = dom_.nonvanish(k, j, lc);
        if (x) {
          graph_.resolve(*x);
          lc = graph_.coeff(u, e);
        }
        record(k, j, e, StepKind::NonVanish, -1, lc);
        omega_.push_back(u);
        lead_.push_back(lc);
        continue;
      }
      const bool member = in_level(e, prev, &m);
      if (member && !(form_ == SystemForm::Full && has_variable(j))) {
        dom_.fix_free(j);
        V lc = graph_.coeff(u, e);
        record(k, j, e, StepKind::Reduce, m, lc);
        reduce(u, e, m);
        continue;
      }
      dom_.activate(j);
      V lc = graph_.coeff(u, e);
      record(k, j, e, StepKind::Vanish, -1, lc);
      if (auto x = dom_.vanish(j, lc, e)) graph_.resolve(*x);
      u = graph_.drop(u, e);
    }
  }

  const Semigroup& s_;
  const Schedule& sch_;
  Domain& dom_;
  SystemForm form_;
  SeriesGraph<Domain> graph_;
  std::vector<int> omega_;
  std::vector<V> lead_;
  int y_node_ = -1;
  std::vector<int> ypow_;
  std::map<std::pair<int, int>, int> products_;
  std::vector<TraceStep> trace_;
};

inline void check_realizable(const GammaSemimodule& l, Mode mode) {
  if (!is_increasing(l)) throw Error(ErrorKind::NotIncreasing, l.to_string() + " is not increasing");
  if (mode == Mode::Kaehler) {
    const Semigroup& s = l.semigroup();
    if (l.generators().size() < 2 || l.generators()[1] != s.beta() - s.alpha()) {
      throw Error(ErrorKind::BadMode, "kaehler mode needs g_1 = beta - alpha = " +
                                          std::to_string(s.beta() - s.alpha()));
    }
  }
}

}  // namespace detail

struct RunOptions {
  Mode mode = Mode::General;
  SystemForm form = SystemForm::Reduced;
  std::vector<int> support;  ///< empty: all variables
  std::size_t max_terms = 200000;
};

struct SymbolicRun {
  ConditionSystem conditions;
  std::vector<TraceStep> trace;
};

/// Symbolic block recursion producing the condition system.
inline SymbolicRun run_blocks(const GammaSemimodule& l, const RunOptions& opt = {}) {
  detail::check_realizable(l, opt.mode);
  const Semigroup& s = l.semigroup();
  Schedule sch = schedule(l);
  detail::SymbolicDomain dom(detail::VarTable(sch.coefficient_count, opt.support), opt.max_terms);
  if (sch.s() == 0) {
    ConditionSystem cs = dom.finish();
    cs.support = opt.support;
    return {std::move(cs), {}};
  }
  GeneratorCoefficients gc = generator_coefficients(s, sch.generators[1], opt.mode);
  detail::BlockRunner<detail::SymbolicDomain> runner(s, sch, gc, dom, opt.form);
  runner.run();
  ConditionSystem cs = dom.finish();
  cs.support = opt.support;
  return {std::move(cs), runner.trace()};
}

inline SymbolicRun run_blocks(const Semigroup& s, const GammaSemimodule& l, Mode mode) {
  if (!(s == l.semigroup())) throw Error(ErrorKind::InternalInconsistency, "semimodule over a different semigroup");
  RunOptions opt;
  opt.mode = mode;
  return run_blocks(l, opt);
}

/// Forward substitution in increasing variable order. Nonvanishing variables
/// try policy.first..policy.last; a later zero denominator or violated
/// residual backtracks to the most recent such choice. Values are indexed by
/// variable (entry 0 unused).
inline std::vector<Rat> solve_forward(const ConditionSystem& cs, const FreePolicy& policy = {}) {
  const int b = cs.arity;
  std::vector<Rat> x(b + 1, Rat(0));
  std::vector<const Equality*> eq(b + 1, nullptr);
  std::vector<const NonVanishing*> nv(b + 1, nullptr);
  std::vector<char> fixed_zero(b + 1, 0);
  for (const auto& e : cs.equalities) eq.at(e.var) = &e;
  std::vector<const NonVanishing*> loose_nv;
  for (const auto& n : cs.nonvanishing) {
    if (n.var >= 1) {
      nv.at(n.var) = &n;
    } else {
      loose_nv.push_back(&n);
    }
  }
  if (!cs.support.empty()) {
    std::vector<char> keep(b + 1, 0);
    for (int i : cs.support) {
      if (i >= 1 && i <= b) keep[i] = 1;
    }
    for (int i = 1; i <= b; ++i) fixed_zero[i] = !keep[i];
  }
  // conditions without their own variable are checked once everything they mention is assigned
  std::vector<std::vector<const MPoly*>> must_vanish(b + 1), must_not_vanish(b + 1);
  for (const auto& r : cs.residuals) must_vanish[std::min(r.value.max_var(), b)].push_back(&r.value);
  for (const auto* n : loose_nv) must_not_vanish[std::min(n->leading.max_var(), b)].push_back(&n->leading);

  auto checks_pass = [&](int i) {
    for (const MPoly* p : must_vanish[i]) {
      if (!is_zero(p->evaluate(x))) return false;
    }
    for (const MPoly* p : must_not_vanish[i]) {
      if (is_zero(p->evaluate(x))) return false;
    }
    return true;
  };

  int budget = 1 << 16;
  std::function<bool(int)> assign = [&](int i) -> bool {
    if (--budget < 0) return false;
    if (i > b) return true;
    if (fixed_zero[i]) {
      x[i] = 0;
      return checks_pass(i) && assign(i + 1);
    }
    if (eq[i]) {
      const Rat den = eq[i]->denominator.evaluate(x);
      if (is_zero(den)) return false;
      x[i] = eq[i]->numerator.evaluate(x) / den;
      return checks_pass(i) && assign(i + 1);
    }
    if (nv[i]) {
      for (int v = policy.first; v <= policy.last; ++v) {
        x[i] = v;
        if (is_zero(nv[i]->leading.evaluate(x))) continue;
        if (checks_pass(i) && assign(i + 1)) return true;
      }
      return false;
    }
    x[i] = policy.free_value;
    return checks_pass(i) && assign(i + 1);
  };
  if (!checks_pass(0) || !assign(1)) {
    throw Error(ErrorKind::Unsolvable, "no assignment within the retry bound");
  }
  return x;
}

struct NumericRun {
  std::vector<Rat> assignment;  ///< indexed by variable, entry 0 unused
  std::vector<TraceStep> trace;
  int attempts = 0;
};

/// Block recursion over exact rationals: every variable is decided as soon as
/// its step is reached. Restarts with the next value of the latest
/// nonvanishing variable when a later step has no solution.
inline NumericRun run_numeric(const GammaSemimodule& l, const RunOptions& opt = {}, const FreePolicy& policy = {}) {
  detail::check_realizable(l, opt.mode);
  const Semigroup& s = l.semigroup();
  Schedule sch = schedule(l);
  NumericRun out;
  if (sch.s() == 0) {
    out.assignment.assign(sch.coefficient_count + 1, Rat(0));
    return out;
  }
  GeneratorCoefficients gc = generator_coefficients(s, sch.generators[1], opt.mode);
  std::map<int, int> first_try;
  for (int attempt = 1; attempt <= 64; ++attempt) {
    detail::NumericDomain dom(detail::VarTable(sch.coefficient_count, opt.support), policy, first_try);
    detail::BlockRunner<detail::NumericDomain> runner(s, sch, gc, dom, opt.form);
    try {
      runner.run();
      out.assignment = dom.vars().values();
      for (int i = 1; i <= sch.coefficient_count; ++i) {
        if (dom.vars().state(i) != detail::VarState::Fixed) out.assignment[i] = policy.free_value;
      }
      out.trace = runner.trace();
      out.attempts = attempt;
      return out;
    } catch (const detail::Dead& dead) {
      // bump the latest nonvanishing choice before the failure
      const auto& chosen = dom.chosen();
      auto it = chosen.lower_bound(dead.position + 1);
      bool bumped = false;
      while (it != chosen.begin()) {
        --it;
        if (it->second < policy.last) {
          first_try.erase(first_try.upper_bound(it->first), first_try.end());
          first_try[it->first] = it->second + 1;
          bumped = true;
          break;
        }
      }
      if (!bumped) break;
    }
  }
  throw Error(ErrorKind::Unsolvable, "numeric run exhausted retries for " + l.to_string());
}

struct RealizationResult {
  PuiseuxParam param;
  TruncSeries<Rat> z{0};
  std::optional<ConditionSystem> conditions;  ///< absent when the symbolic run was skipped
  std::vector<TraceStep> trace;
  GammaSemimodule target;
  Mode mode = Mode::General;
  bool verified = false;
};

struct RealizeOptions {
  RunOptions run;
  FreePolicy policy;
  bool symbolic = true;  ///< build the condition system and solve it
};

inline TruncSeries<Rat> realized_z(const Semigroup& s, const Schedule& sch, Mode mode, const std::vector<Rat>& x) {
  if (sch.s() == 0) return TruncSeries<Rat>::monomial(0, 0, Rat(1));
  const int g1 = sch.generators[1];
  GeneratorCoefficients gc = generator_coefficients(s, g1, mode);
  const int b = sch.coefficient_count;
  TruncSeries<Rat> z(g1 + b);
  z.set(g1, gc.c0);
  for (int i = 1; i <= b; ++i) z.set(g1 + i, gc.c[i] * x[i]);
  return z;
}

/// Value set of R + zR for a realization, compared against the target.
inline void verify_realization(const RealizationResult& r) {
  ValueSet vs = value_set(r.param, {one_series(), r.z});
  if (!(vs.semimodule == r.target)) {
    throw Error(ErrorKind::VerificationFailed,
                "target " + r.target.to_string() + " but v(R+zR) = " + vs.semimodule.to_string());
  }
}

inline RealizationResult realize(const GammaSemimodule& l, const RealizeOptions& opt = {}) {
  detail::check_realizable(l, opt.run.mode);
  const Semigroup& s = l.semigroup();
  Schedule sch = schedule(l);
  RealizationResult out{PuiseuxParam::monomial(s), TruncSeries<Rat>(0), std::nullopt, {}, l, opt.run.mode, false};
  std::vector<Rat> x;
  if (opt.symbolic) {
    SymbolicRun sym = run_blocks(l, opt.run);
    x = solve_forward(sym.conditions, opt.policy);
    out.conditions = std::move(sym.conditions);
    out.trace = std::move(sym.trace);
  } else {
    NumericRun num = run_numeric(l, opt.run, opt.policy);
    x = std::move(num.assignment);
    out.trace = std::move(num.trace);
  }
  for (int i = 1; i <= sch.coefficient_count; ++i) out.param.coeffs[i - 1] = x[i];
  out.z = realized_z(s, sch, opt.run.mode, x);
  verify_realization(out);
  out.verified = true;
  return out;
}

inline RealizationResult realize(const Semigroup& s, const GammaSemimodule& l, Mode mode) {
  if (!(s == l.semigroup())) throw Error(ErrorKind::InternalInconsistency, "semimodule over a different semigroup");
  RealizeOptions opt;
  opt.run.mode = mode;
  return realize(l, opt);
}

// JSON

inline nlohmann::json rat_pair(const Rat& r) { return {numerator_string(r), denominator_string(r)}; }

inline Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_array() && j.size() == 2) return make_rat(j[0].get<std::string>(), j[1].get<std::string>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error(ErrorKind::ParseError, "bad rational " + j.dump());
}

inline nlohmann::json conditions_to_json(const ConditionSystem& cs) {
  nlohmann::json eq = nlohmann::json::array(), neq = nlohmann::json::array(), res = nlohmann::json::array();
  for (const auto& e : cs.equalities) {
    eq.push_back({{"var", e.var},
                  {"numerator", e.numerator.to_string()},
                  {"denominator", e.denominator.to_string()},
                  {"text", e.text()}});
  }
  for (const auto& n : cs.nonvanishing) {
    neq.push_back({{"block", n.block}, {"var", n.var}, {"leading", n.leading.to_string()}, {"text", n.text()}});
  }
  for (const auto& r : cs.residuals) {
    res.push_back({{"position", r.position}, {"degree", r.degree}, {"value", r.value.to_string()}});
  }
  nlohmann::json out = {{"arity", cs.arity}, {"eq", eq}, {"neq", neq}, {"free", cs.free}, {"residual", res}};
  if (!cs.support.empty()) out["support"] = cs.support;
  return out;
}

inline nlohmann::json param_to_json(const PuiseuxParam& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(rat_pair(c));
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"coeffs", coeffs}};
}

inline PuiseuxParam param_from_json(const nlohmann::json& j) {
  try {
    PuiseuxParam p;
    p.alpha = j.at("alpha").get<int>();
    p.beta = j.at("beta").get<int>();
    Semigroup s(p.alpha, p.beta);
    for (const auto& c : j.at("coeffs")) p.coeffs.push_back(rat_from_json(c));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline nlohmann::json series_to_json(const TruncSeries<Rat>& z) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [d, c] : z.terms()) out.push_back({d, numerator_string(c), denominator_string(c)});
  return out;
}

inline TruncSeries<Rat> series_from_json(const nlohmann::json& j) {
  int top = 0;
  for (const auto& t : j) top = std::max(top, t.at(0).get<int>());
  TruncSeries<Rat> z(top);
  for (const auto& t : j) z.set(t.at(0).get<int>(), make_rat(t.at(1).get<std::string>(), t.at(2).get<std::string>()));
  return z;
}

inline nlohmann::json trace_to_json(const std::vector<TraceStep>& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : trace) {
    nlohmann::json step = {{"block", t.block}, {"position", t.position}, {"degree", t.degree},
                           {"kind", to_string(t.kind)}, {"lc", t.lc}};
    if (t.reducer >= 0) step["reducer"] = t.reducer;
    out.push_back(std::move(step));
  }
  return out;
}

inline nlohmann::json realization_to_json(const RealizationResult& r, bool with_trace = false) {
  nlohmann::json out = param_to_json(r.param);
  out["generators"] = r.target.generators();
  out["mode"] = to_string(r.mode);
  out["z"] = series_to_json(r.z);
  out["conditions"] = r.conditions ? conditions_to_json(*r.conditions) : nlohmann::json(nullptr);
  out["verified"] = r.verified;
  if (with_trace) out["trace"] = trace_to_json(r.trace);
  return out;
}

inline nlohmann::json value_set_to_json(const ValueSet& v) {
  return {{"generators", v.semimodule.generators()}, {"conductor", v.semimodule.conductor_scan()}};
}

}  // namespace semimod
