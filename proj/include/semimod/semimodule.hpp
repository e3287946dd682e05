#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "semigroup.hpp"

namespace semimod {

/// A normalized Gamma-semimodule: 0 is a generator and every other minimal
/// generator is a gap of Gamma. Generators are kept in natural order; the
/// gap-order view is derived on request.
class GammaSemimodule {
 public:
  GammaSemimodule(std::shared_ptr<const Semigroup> semigroup, std::vector<int> minimal_generators)
      : semigroup_(std::move(semigroup)), generators_(std::move(minimal_generators)) {
    std::sort(generators_.begin(), generators_.end());
    const int w = semigroup_->window();
    table_.assign(static_cast<std::size_t>(w) + 1, false);
    for (int g : generators_) {
      for (int n = g; n <= w; ++n) {
        if (semigroup_->contains(n - g)) table_[n] = true;
      }
    }
  }

  const Semigroup& semigroup() const noexcept { return *semigroup_; }
  const std::shared_ptr<const Semigroup>& semigroup_ptr() const noexcept { return semigroup_; }

  /// Minimal generators sorted by the natural order; generators()[0] == 0.
  const std::vector<int>& generators() const noexcept { return generators_; }

  /// Number of nonzero generators.
  std::size_t rank() const noexcept { return generators_.size() - 1; }

  /// Minimal generators sorted by the gap order (increasing a, decreasing b),
  /// 0 first.
  std::vector<int> generators_gap_order() const {
    std::vector<int> out(generators_.begin() + 1, generators_.end());
    std::sort(out.begin(), out.end(), [this](int x, int y) {
      return semigroup_->gap(x).a < semigroup_->gap(y).a;
    });
    out.insert(out.begin(), 0);
    return out;
  }

  bool contains(long long n) const noexcept {
    if (n < 0) return false;
    if (n >= static_cast<long long>(table_.size())) return true;
    return table_[static_cast<std::size_t>(n)];
  }

  /// max non-member + 1, by scanning the membership table.
  int conductor_scan() const noexcept {
    for (int n = static_cast<int>(table_.size()) - 1; n >= 0; --n) {
      if (!table_[n]) return n + 1;
    }
    return 0;
  }

  friend bool operator==(const GammaSemimodule& x, const GammaSemimodule& y) {
    return *x.semigroup_ == *y.semigroup_ && x.generators_ == y.generators_;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(generators_[i]);
    }
    return out + "]";
  }

 private:
  std::shared_ptr<const Semigroup> semigroup_;
  std::vector<int> generators_;
  std::vector<bool> table_;
};

/// Shift by -min(gens) and drop generators lying in the span of smaller ones.
inline GammaSemimodule normalize_semimodule(std::shared_ptr<const Semigroup> semigroup,
                                            std::vector<long long> gens) {
  if (gens.empty()) throw Error(ErrorKind::ParseError, "empty generator set");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const long long shift = gens.front();
  std::vector<int> minimal;
  for (long long g : gens) {
    const long long x = g - shift;
    bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                 [&](int m) { return semigroup->contains(x - m); });
    if (!redundant) minimal.push_back(static_cast<int>(x));
  }
  return GammaSemimodule(std::move(semigroup), std::move(minimal));
}

inline GammaSemimodule normalize_semimodule(const Semigroup& semigroup, std::vector<long long> gens) {
  return normalize_semimodule(std::make_shared<const Semigroup>(semigroup), std::move(gens));
}

/// True iff all pairwise differences are gaps (singletons are lean).
inline bool is_lean(const Semigroup& semigroup, const std::vector<long long>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      long long d = gens[i] > gens[j] ? gens[i] - gens[j] : gens[j] - gens[i];
      if (d == 0 || semigroup.contains(d)) return false;
    }
  }
  return true;
}

/// ES-turns of the staircase from (0, alpha) to (beta, 0).
struct LatticePath {
  int alpha = 0;
  int beta = 0;
  std::vector<std::pair<int, int>> turns;

  friend bool operator==(const LatticePath&, const LatticePath&) = default;
};

inline LatticePath lattice_path(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  LatticePath path{s.alpha(), s.beta(), {}};
  for (int g : d.generators_gap_order()) {
    if (g == 0) continue;
    Gap gap = s.gap(g);
    path.turns.emplace_back(gap.a, gap.b);
  }
  return path;
}

/// Minimal generators of Syz(D) and the largest of them.
struct SyzygyData {
  std::vector<int> generators;
  int max_gen = 0;

  friend bool operator==(const SyzygyData&, const SyzygyData&) = default;
};

namespace detail {

/// Minimal generators of a Gamma-semimodule given by a membership predicate on
/// [0, limit]: n is minimal iff n - alpha and n - beta are outside.
template <typename Member>
std::vector<int> minimal_generators(const Semigroup& s, int limit, Member&& member) {
  std::vector<int> out;
  for (int n = 0; n <= limit; ++n) {
    if (member(n) && !member(n - s.alpha()) && !member(n - s.beta())) out.push_back(n);
  }
  return out;
}

inline bool in_translate(const Semigroup& s, long long n, long long shift) {
  return s.contains(n - shift);
}

}  // namespace detail

/// Syz(D) = union over i != j of (Gamma+g_i) cap (Gamma+g_j), computed as a
/// membership table. Syz([0]) is taken to be Gamma + alpha*beta.
inline SyzygyData syzygy(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  const auto& g = d.generators();
  if (g.size() == 1) return {{s.product()}, s.product()};
  auto member = [&](long long n) {
    int hits = 0;
    for (int gi : g) {
      if (s.contains(n - gi) && ++hits >= 2) return true;
    }
    return false;
  };
  SyzygyData out;
  out.generators = detail::minimal_generators(s, s.window(), member);
  out.max_gen = out.generators.empty() ? 0 : out.generators.back();
  return out;
}

/// Closed form h_k = ab - a_{k-1} alpha - b_k beta in gap order, with
/// a_0 = 0 and the wraparound h_0 = ab - a_s alpha. Sorted ascending.
inline std::vector<int> syzygy_closed_form(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  const auto order = d.generators_gap_order();
  const int ab = s.product();
  if (order.size() == 1) return {ab};
  std::vector<int> out;
  int prev_a = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    Gap gap = s.gap(order[k]);
    out.push_back(ab - prev_a * s.alpha() - gap.b * s.beta());
    prev_a = gap.a;
  }
  out.push_back(ab - prev_a * s.alpha());
  std::sort(out.begin(), out.end());
  return out;
}

/// c(D) = M - alpha - beta + 1, checked against the membership-table scan.
inline int conductor_semimodule(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  const int by_formula = syzygy(d).max_gen - s.alpha() - s.beta() + 1;
  const int by_scan = d.conductor_scan();
  if (by_formula != by_scan) {
    throw Error(ErrorKind::InternalInconsistency,
                "conductor formula " + std::to_string(by_formula) + " != scan " +
                    std::to_string(by_scan) + " for " + d.to_string());
  }
  return by_formula;
}

/// u_1..u_s (natural-order indexing) and the increasing flag.
struct USequence {
  std::vector<int> values;
  bool increasing = true;

  friend bool operator==(const USequence&, const USequence&) = default;
};

namespace detail {

/// min((Gamma + x) cap union_{y in earlier} (Gamma + y)), by direct search.
inline int first_collision(const Semigroup& s, int x, const std::vector<int>& earlier) {
  const int limit = x + s.window();
  for (int n = x; n <= limit; ++n) {
    if (!s.contains(n - x)) continue;
    for (int y : earlier) {
      if (s.contains(n - y)) return n;
    }
  }
  throw Error(ErrorKind::InternalInconsistency, "no collision found for " + std::to_string(x));
}

}  // namespace detail

inline USequence u_sequence(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  const auto& g = d.generators();
  USequence out;
  std::vector<int> earlier{g[0]};
  for (std::size_t i = 1; i < g.size(); ++i) {
    out.values.push_back(detail::first_collision(s, g[i], earlier));
    earlier.push_back(g[i]);
  }
  // g_{i+1} > u_i with u_0 = 0 and g_{s+1} = infinity
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (g[i + 1] <= out.values[i - 1]) out.increasing = false;
  }
  return out;
}

/// Same minima with generators indexed in gap order (direct set computation).
inline std::vector<int> u_sequence_gap_order(const GammaSemimodule& d) {
  const auto order = d.generators_gap_order();
  std::vector<int> out;
  std::vector<int> earlier{order[0]};
  for (std::size_t i = 1; i < order.size(); ++i) {
    out.push_back(detail::first_collision(d.semigroup(), order[i], earlier));
    earlier.push_back(order[i]);
  }
  return out;
}

/// Lattice closed form u_i = min(ab - a_{i-1} alpha - b_i beta, m_i),
/// m_i = min(alpha (beta - a_i), beta (alpha - b_i)), gap-order indexing.
inline std::vector<int> u_sequence_closed_form(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  const auto order = d.generators_gap_order();
  const int ab = s.product();
  std::vector<int> out;
  int prev_a = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    Gap gap = s.gap(order[i]);
    const int m = std::min(s.alpha() * (s.beta() - gap.a), s.beta() * (s.alpha() - gap.b));
    out.push_back(std::min(ab - prev_a * s.alpha() - gap.b * s.beta(), m));
    prev_a = gap.a;
  }
  return out;
}

/// Increasing in the sense g_{i+1} > u_i for all i. [0] counts as increasing.
inline bool is_increasing(const GammaSemimodule& d, USequence* certificate = nullptr) {
  USequence u = u_sequence(d);
  const bool result = u.increasing;
  if (certificate) *certificate = std::move(u);
  return result;
}

/// Values of Delorme's split of (Gamma+p) cap (Gamma+q).
struct DelormeSplit {
  long long u = 0;
  long long v = 0;
  long long ubar = 0;
  long long vbar = 0;

  friend bool operator==(const DelormeSplit&, const DelormeSplit&) = default;
};

inline DelormeSplit delorme_split(const Semigroup& s, long long p, long long q) {
  const long long diff = p > q ? p - q : q - p;
  if (s.contains(diff)) {
    throw Error(ErrorKind::DifferenceInSemigroup,
                "|" + std::to_string(p) + "-" + std::to_string(q) + "| is in the semigroup");
  }
  const long long ab = s.product();
  const long long start = std::max(p, q);
  long long u = start;
  while (!(s.contains(u - p) && s.contains(u - q))) ++u;
  const long long v = p + q + ab - u;
  return {u, v, u + s.conductor() - ab, v + s.conductor() - ab};
}

/// Checks the four set identities of the split on [lo, hi]:
///  (1) (G+p) cap (G+q) = (G+u) cup (G+v)
///  (2) (G+p) cup (G+q) = (G+u-ab) cap (G+v-ab)
///  (3) N+vbar is inside (G+p) cup (G+q)
///  (4) (N+ubar) cap ((G+p) cup (G+q)) = (N+ubar) cap (G+v-ab)
inline bool delorme_identities_hold(const Semigroup& s, long long p, long long q,
                                    const DelormeSplit& split, long long lo, long long hi) {
  const long long ab = s.product();
  auto in = [&](long long n, long long shift) { return s.contains(n - shift); };
  for (long long n = lo; n <= hi; ++n) {
    const bool pp = in(n, p), qq = in(n, q);
    if ((pp && qq) != (in(n, split.u) || in(n, split.v))) return false;
    if ((pp || qq) != (in(n, split.u - ab) && in(n, split.v - ab))) return false;
    if (n >= split.vbar && !(pp || qq)) return false;
    if (n >= split.ubar && (pp || qq) != in(n, split.v - ab)) return false;
  }
  return true;
}

/// Verification window used by the tests: [min(p,q) - ab, min(p,q) + 2ab + c].
inline std::pair<long long, long long> delorme_window(const Semigroup& s, long long p, long long q) {
  const long long lo = std::min(p, q);
  return {lo - s.product(), lo + 2LL * s.product() + s.conductor()};
}

struct CSequence {
  std::vector<int> values;

  friend bool operator==(const CSequence&, const CSequence&) = default;
};

/// c_1 = g_1 - u_1, c_i = c_{i-1} + g_i - u_i. Each -c_i is checked to lie in
/// Gamma and (N+ubar_i) cap E_i = (N+ubar_i) cap (Gamma+c_i) is verified on
/// [ubar_i, ubar_i + 2ab].
inline CSequence c_sequence(const GammaSemimodule& d) {
  const Semigroup& s = d.semigroup();
  USequence u;
  if (!is_increasing(d, &u)) {
    throw Error(ErrorKind::NotIncreasing, d.to_string() + " is not increasing");
  }
  const auto& g = d.generators();
  const int ab = s.product();
  CSequence out;
  int c = 0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    c += g[i] - u.values[i - 1];
    if (!s.contains(-static_cast<long long>(c))) {
      throw Error(ErrorKind::InternalInconsistency, "-c_" + std::to_string(i) + " not in Gamma");
    }
    const int ubar = u.values[i - 1] + s.conductor() - ab;
    for (int n = ubar; n <= ubar + 2 * ab; ++n) {
      bool in_e = false;
      for (std::size_t j = 0; j <= i && !in_e; ++j) in_e = s.contains(n - g[j]);
      if (in_e != s.contains(static_cast<long long>(n) - c)) {
        throw Error(ErrorKind::InternalInconsistency,
                    "c-sequence identity fails at " + std::to_string(n) + " for " + d.to_string());
      }
    }
    out.values.push_back(c);
  }
  return out;
}

}  // namespace semimod
