#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"
#include "semigroup.hpp"
#include "semimodule.hpp"
#include "series.hpp"

namespace semimod {

/// x(t) = t^alpha, y(t) = t^beta + sum_{i=1..b} a_i t^{i+beta}.
struct PuiseuxParam {
  int alpha = 0;
  int beta = 0;
  std::vector<Rat> coeffs;  ///< coeffs[i-1] = a_i

  /// b = c(Gamma) - beta - 1, clamped at zero.
  static int coefficient_count(const Semigroup& s) {
    return std::max(0, s.conductor() - s.beta() - 1);
  }

  static PuiseuxParam monomial(const Semigroup& s) {
    return {s.alpha(), s.beta(), std::vector<Rat>(coefficient_count(s), Rat(0))};
  }

  /// Builds a parameterization from absolute exponents: y = t^beta + sum c_k t^k.
  static PuiseuxParam from_exponents(const Semigroup& s, const std::map<int, Rat>& terms) {
    PuiseuxParam p = monomial(s);
    for (const auto& [k, c] : terms) {
      const int i = k - s.beta();
      if (i < 1) throw Error(ErrorKind::ParseError, "exponent " + std::to_string(k) + " <= beta");
      if (i > static_cast<int>(p.coeffs.size())) p.coeffs.resize(i, Rat(0));
      p.coeffs[i - 1] = c;
    }
    return p;
  }

  Semigroup semigroup() const { return Semigroup(alpha, beta); }

  friend bool operator==(const PuiseuxParam&, const PuiseuxParam&) = default;
};

/// Dense series with exact coefficients, index = t-degree.
using DenseSeries = std::vector<Rat>;

namespace detail {

inline std::optional<int> dense_order(const DenseSeries& f, int from = 0) {
  for (int d = from; d < static_cast<int>(f.size()); ++d) {
    if (!is_zero(f[d])) return d;
  }
  return std::nullopt;
}

inline DenseSeries dense_mul(const DenseSeries& f, const DenseSeries& g, int n) {
  DenseSeries out(n + 1, Rat(0));
  auto of = dense_order(f), og = dense_order(g);
  if (!of || !og) return out;
  for (int i = *of; i <= n && i < static_cast<int>(f.size()); ++i) {
    if (is_zero(f[i])) continue;
    for (int j = *og; i + j <= n && j < static_cast<int>(g.size()); ++j) {
      if (!is_zero(g[j])) out[i + j] += f[i] * g[j];
    }
  }
  return out;
}

inline DenseSeries to_dense(const TruncSeries<Rat>& f, int n) {
  DenseSeries out(n + 1, Rat(0));
  for (const auto& [d, c] : f.terms()) {
    if (d <= n) out[d] = c;
  }
  return out;
}

/// Monomials x^e1 y^e2 of the curve ring, truncated at degree n; y powers
/// are cached.
class CurveRing {
 public:
  CurveRing(const PuiseuxParam& p, int n) : param_(p), n_(n) {
    DenseSeries y(n + 1, Rat(0));
    if (p.beta <= n) y[p.beta] = 1;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      const int d = p.beta + static_cast<int>(i) + 1;
      if (d <= n) y[d] = p.coeffs[i];
    }
    y_powers_.push_back(DenseSeries(n + 1, Rat(0)));
    y_powers_[0][0] = 1;
    y_powers_.push_back(std::move(y));
  }

  int window() const noexcept { return n_; }
  const PuiseuxParam& param() const noexcept { return param_; }

  const DenseSeries& y_power(int e) {
    while (static_cast<int>(y_powers_.size()) <= e) {
      y_powers_.push_back(dense_mul(y_powers_.back(), y_powers_[1], n_));
    }
    return y_powers_[e];
  }

  /// x^e1 y^e2 * f, truncated.
  DenseSeries times_monomial(int e1, int e2, const DenseSeries& f) {
    DenseSeries prod = e2 == 0 ? f : dense_mul(y_power(e2), f, n_);
    prod.resize(n_ + 1, Rat(0));
    const int shift = e1 * param_.alpha;
    DenseSeries out(n_ + 1, Rat(0));
    for (int d = 0; d + shift <= n_; ++d) out[d + shift] = prod[d];
    return out;
  }

 private:
  PuiseuxParam param_;
  int n_;
  std::vector<DenseSeries> y_powers_;
};

/// Order-pivoted echelon form over Rat; pivots are normalized to leading
/// coefficient 1.
class Echelon {
 public:
  explicit Echelon(int n) : n_(n) {}

  /// Reduces `row` and keeps it as a pivot if it survives. Returns its final
  /// order (nullopt if it vanished up to the window).
  std::optional<int> insert(DenseSeries row) {
    auto o = reduce(row);
    if (!o) return std::nullopt;
    const Rat lc = row[*o];
    for (int d = *o; d <= n_; ++d) row[d] /= lc;
    pivots_.emplace(*o, std::move(row));
    return o;
  }

  std::optional<int> reduce(DenseSeries& row) const {
    auto o = dense_order(row);
    while (o && *o <= n_) {
      auto it = pivots_.find(*o);
      if (it == pivots_.end()) return o;
      const Rat factor = row[*o];
      const DenseSeries& p = it->second;
      for (int d = *o; d <= n_; ++d) {
        if (!is_zero(p[d])) row[d] -= factor * p[d];
      }
      o = dense_order(row, *o + 1);
    }
    return std::nullopt;
  }

  std::vector<int> orders() const {
    std::vector<int> out;
    for (const auto& [o, row] : pivots_) out.push_back(o);
    return out;
  }

 private:
  int n_;
  std::map<int, DenseSeries> pivots_;
};

}  // namespace detail

/// v(R w_0 + ... + R w_k) as a normalized semimodule, plus the raw pivot
/// orders found by elimination.
struct ValueSet {
  GammaSemimodule semimodule;
  std::vector<int> pivot_orders;
  int shift = 0;  ///< least generator order (subtracted by normalization)

  int conductor() const { return semimodule.conductor_scan(); }
};

namespace detail {

inline ValueSet finish_value_set(const Semigroup& s, const std::vector<int>& values, int shift) {
  std::vector<long long> below;
  for (int v : values) {
    if (v < shift + s.conductor()) below.push_back(v);
  }
  below.push_back(shift);
  auto sp = std::make_shared<const Semigroup>(s);
  GammaSemimodule d = normalize_semimodule(sp, below);
  return {std::move(d), values, shift};
}

inline std::vector<DenseSeries> checked_generators(const std::vector<TruncSeries<Rat>>& gens, int* shift,
                                                   int extra) {
  std::optional<int> least;
  for (const auto& g : gens) {
    auto o = g.order();
    if (!o) throw Error(ErrorKind::ZeroGenerator, "generator vanishes identically");
    least = least ? std::min(*least, *o) : *o;
  }
  if (!least) throw Error(ErrorKind::ZeroGenerator, "no generators");
  *shift = *least;
  std::vector<DenseSeries> out;
  for (const auto& g : gens) out.push_back(to_dense(g, *least + extra));
  return out;
}

}  // namespace detail

/// Window used by value_set: least generator order + c(Gamma) + alpha*beta.
inline int valuation_window(const Semigroup& s, int shift = 0) {
  return shift + s.conductor() + s.product();
}

/// Orders of R w_0 + ... + R w_k by exact order-pivoted elimination of all
/// products x^e1 y^e2 w_i with order <= N. Generators are taken as exact
/// polynomials in t. `row_order` permutes the insertion order (tests use it
/// to check independence of the elimination order).
inline ValueSet value_set(const PuiseuxParam& param, const std::vector<TruncSeries<Rat>>& gens,
                          const std::vector<std::size_t>* row_order = nullptr, int extra_window = 0) {
  const Semigroup s = param.semigroup();
  int shift = 0;
  const int extra = s.conductor() + s.product() + extra_window;
  auto dense = detail::checked_generators(gens, &shift, extra);
  const int n = shift + extra;
  detail::CurveRing ring(param, n);
  struct RowSpec {
    int e1, e2;
    std::size_t gen;
  };
  std::vector<RowSpec> specs;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    const int o = *detail::dense_order(dense[k]);
    for (int e2 = 0; o + e2 * s.beta() <= n; ++e2) {
      for (int e1 = 0; o + e2 * s.beta() + e1 * s.alpha() <= n; ++e1) specs.push_back({e1, e2, k});
    }
  }
  detail::Echelon echelon(n);
  auto insert = [&](const RowSpec& r) {
    echelon.insert(ring.times_monomial(r.e1, r.e2, dense[r.gen]));
  };
  if (row_order) {
    for (std::size_t i : *row_order) insert(specs.at(i % specs.size()));
  } else {
    for (const auto& r : specs) insert(r);
  }
  return detail::finish_value_set(s, echelon.orders(), shift);
}

/// Number of candidate rows value_set will eliminate (for permutation tests).
inline std::size_t value_set_row_count(const PuiseuxParam& param, const std::vector<TruncSeries<Rat>>& gens) {
  const Semigroup s = param.semigroup();
  int shift = 0;
  auto dense = detail::checked_generators(gens, &shift, s.conductor() + s.product());
  const int n = shift + s.conductor() + s.product();
  std::size_t count = 0;
  for (const auto& g : dense) {
    const int o = *detail::dense_order(g);
    for (int e2 = 0; o + e2 * s.beta() <= n; ++e2) count += (n - o - e2 * s.beta()) / s.alpha() + 1;
  }
  return count;
}

/// dy/dx = y'(t) / x'(t) as a polynomial in t (exact, no truncation needed).
inline TruncSeries<Rat> dy_dx(const PuiseuxParam& p) {
  const int top = p.beta + static_cast<int>(p.coeffs.size()) - p.alpha;
  TruncSeries<Rat> z(std::max(top, p.beta - p.alpha));
  z.set(p.beta - p.alpha, Rat(p.beta, p.alpha));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    const int k = p.beta + static_cast<int>(i) + 1;
    Rat c = p.coeffs[i] * Rat(k, p.alpha);
    c.canonicalize();
    z.set(k - p.alpha, c);
  }
  return z;
}

inline TruncSeries<Rat> one_series(int trunc = 0) { return TruncSeries<Rat>::monomial(trunc, 0, Rat(1)); }

/// Normalized Kaehler semimodule v(R + R dy/dx). The non-normalized set of
/// differential values is this shifted by alpha - 1.
struct KaehlerValues {
  ValueSet normalized;
  int differential_shift = 0;  ///< alpha - 1

  std::vector<int> differential_generators() const {
    std::vector<int> out;
    for (int g : normalized.semimodule.generators()) out.push_back(g + differential_shift);
    return out;
  }
};

inline KaehlerValues kaehler_semimodule(const PuiseuxParam& param) {
  const TruncSeries<Rat> z = dy_dx(param);
  return {value_set(param, {one_series(z.trunc()), z}), param.alpha - 1};
}

/// One processed collision of delorme_reduction.
struct Collision {
  int value = 0;       ///< order at which two leading terms were cancelled
  int first = 0;       ///< generator indices involved
  int second = 0;
  std::optional<int> result;  ///< order after reduction, nullopt if beyond window
  bool new_generator = false;
};

struct DelormeResult {
  ValueSet value_set;
  std::vector<int> generator_orders;  ///< in discovery order
  std::vector<Collision> trace;
};

/// Generator-by-generator completion: cancel the least pending collision of
/// two monomial multiples, reduce, and keep the result when its order is new.
/// Stops once every pending collision lies at or above the current conductor.
inline DelormeResult delorme_reduction(const PuiseuxParam& param, const TruncSeries<Rat>& z) {
  const Semigroup s = param.semigroup();
  int shift = 0;
  auto dense = detail::checked_generators({one_series(), z}, &shift, s.conductor() + s.product());
  const int n = shift + s.conductor() + s.product();
  detail::CurveRing ring(param, n);

  std::vector<DenseSeries> omega;
  std::vector<int> orders;
  auto member = [&](long long v) {
    return std::any_of(orders.begin(), orders.end(), [&](int g) { return s.contains(v - g); });
  };
  auto conductor = [&]() {
    // every generator set here contains the shift, so values >= shift + c(Gamma) are members
    for (int v = shift + s.conductor() - 1; v >= shift; --v) {
      if (!member(v)) return v + 1;
    }
    return shift;
  };
  auto multiple = [&](int m, int target) {
    Decomposition e = s.decompose(target - orders[m]);
    return ring.times_monomial(e.e1, e.e2, omega[m]);
  };
  auto reduce = [&](DenseSeries f) -> std::pair<DenseSeries, std::optional<int>> {
    auto o = detail::dense_order(f);
    while (o && *o < conductor() && member(*o)) {
      int m = 0;
      while (!s.contains(*o - orders[m])) ++m;
      const Rat factor = f[*o];
      DenseSeries g = multiple(m, *o);
      for (int d = *o; d <= n; ++d) {
        if (!is_zero(g[d])) f[d] -= factor * g[d];
      }
      o = detail::dense_order(f, *o + 1);
    }
    return {std::move(f), o};
  };

  using Pending = std::tuple<int, int, int>;  // value, i, j
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue;
  auto add_generator = [&](DenseSeries f, int o) {
    const Rat lc = f[o];
    for (auto& c : f) c /= lc;
    const int k = static_cast<int>(omega.size());
    omega.push_back(std::move(f));
    orders.push_back(o);
    for (int i = 0; i < k; ++i) {
      DelormeSplit split = delorme_split(s, orders[i], o);
      queue.emplace(static_cast<int>(split.u), i, k);
      queue.emplace(static_cast<int>(split.v), i, k);
    }
  };

  DelormeResult out{ValueSet{GammaSemimodule(std::make_shared<const Semigroup>(s), {0}), {}, 0}, {}, {}};
  // the lower-order generator seeds the basis
  const bool one_first = detail::dense_order(dense[0]) <= detail::dense_order(dense[1]);
  DenseSeries first = one_first ? dense[0] : dense[1];
  DenseSeries second = one_first ? dense[1] : dense[0];
  add_generator(first, *detail::dense_order(first));
  if (auto [f, o] = reduce(second); o && *o < conductor() && !member(*o)) add_generator(f, *o);

  while (!queue.empty()) {
    auto [value, i, j] = queue.top();
    queue.pop();
    if (value >= conductor() || value > n) continue;
    DenseSeries f = multiple(i, value);
    DenseSeries g = multiple(j, value);
    for (int d = value; d <= n; ++d) f[d] -= g[d];
    auto [r, o] = reduce(std::move(f));
    Collision c{value, i, j, o, false};
    if (o && *o < conductor() && !member(*o)) {
      c.new_generator = true;
      add_generator(std::move(r), *o);
    }
    out.trace.push_back(c);
  }
  out.generator_orders = orders;
  std::vector<int> values;
  for (int v = shift; v < shift + s.conductor(); ++v) {
    if (member(v)) values.push_back(v);
  }
  out.value_set = detail::finish_value_set(s, values, shift);
  return out;
}

}  // namespace semimod
