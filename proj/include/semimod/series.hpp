#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "error.hpp"
#include "mpoly.hpp"
#include "rational.hpp"

namespace semimod {

namespace detail {

template <typename K>
struct CoeffTraits;

template <>
struct CoeffTraits<Rat> {
  static Rat zero(int) { return Rat(0); }
  static Rat one(int) { return Rat(1); }
  static Rat apply(const Rat& x, const std::map<int, Rat>&) { return x; }
};

template <>
struct CoeffTraits<MPoly> {
  static MPoly zero(int arity) { return MPoly(arity); }
  static MPoly one(int arity) { return MPoly(arity, Rat(1)); }
  static MPoly apply(const MPoly& x, const std::map<int, Rat>& a) {
    return a.empty() ? x : x.substitute(a);
  }
};

}  // namespace detail

/// Power series in T truncated at degree `trunc`; stored sparsely. Terms of
/// degree above `trunc` are dropped by every operation.
template <typename K>
class TruncSeries {
 public:
  TruncSeries(int trunc, int arity = 0) : trunc_(trunc), arity_(arity) {}

  static TruncSeries monomial(int trunc, int degree, K coeff, int arity = 0) {
    TruncSeries s(trunc, arity);
    s.set(degree, std::move(coeff));
    return s;
  }

  int trunc() const noexcept { return trunc_; }
  int arity() const noexcept { return arity_; }
  const std::map<int, K>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  K coeff(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? detail::CoeffTraits<K>::zero(arity_) : it->second;
  }

  void set(int degree, K value) {
    if (degree > trunc_ || degree < 0) return;
    if (semimod::is_zero(value)) {
      terms_.erase(degree);
    } else {
      terms_[degree] = std::move(value);
    }
  }

  void add_to(int degree, const K& value) {
    if (degree > trunc_ || degree < 0) return;
    auto it = terms_.find(degree);
    if (it == terms_.end()) {
      if (!semimod::is_zero(value)) terms_.emplace(degree, value);
      return;
    }
    it->second = it->second + value;
    if (semimod::is_zero(it->second)) terms_.erase(it);
  }

  friend TruncSeries operator+(const TruncSeries& f, const TruncSeries& g) {
    check(f, g);
    TruncSeries out = f;
    for (const auto& [d, c] : g.terms_) out.add_to(d, c);
    return out;
  }

  friend TruncSeries operator-(const TruncSeries& f, const TruncSeries& g) {
    check(f, g);
    TruncSeries out = f;
    for (const auto& [d, c] : g.terms_) out.add_to(d, -c);
    return out;
  }

  friend TruncSeries operator*(const TruncSeries& f, const TruncSeries& g) {
    check(f, g);
    TruncSeries out(f.trunc_, f.arity_);
    for (const auto& [df, cf] : f.terms_) {
      for (const auto& [dg, cg] : g.terms_) {
        if (df + dg > f.trunc_) break;
        out.add_to(df + dg, cf * cg);
      }
    }
    return out;
  }

  friend TruncSeries operator*(const TruncSeries& f, const K& s) {
    TruncSeries out(f.trunc_, f.arity_);
    for (const auto& [d, c] : f.terms_) out.set(d, c * s);
    return out;
  }

  /// Multiplication by T^k.
  TruncSeries shifted(int k) const {
    TruncSeries out(trunc_, arity_);
    for (const auto& [d, c] : terms_) out.set(d + k, c);
    return out;
  }

  /// Least degree whose coefficient is nonzero after substituting
  /// `assignment`; nullopt means zero up to the truncation.
  std::optional<int> order(const std::map<int, Rat>& assignment = {}) const {
    for (const auto& [d, c] : terms_) {
      if (!semimod::is_zero(detail::CoeffTraits<K>::apply(c, assignment))) return d;
    }
    return std::nullopt;
  }

  /// Coefficient at order(assignment), after substitution; zero if none.
  K leading_coeff(const std::map<int, Rat>& assignment = {}) const {
    for (const auto& [d, c] : terms_) {
      K v = detail::CoeffTraits<K>::apply(c, assignment);
      if (!semimod::is_zero(v)) return v;
    }
    return detail::CoeffTraits<K>::zero(arity_);
  }

  friend bool operator==(const TruncSeries& f, const TruncSeries& g) {
    return f.trunc_ == g.trunc_ && f.terms_ == g.terms_;
  }

 private:
  static void check(const TruncSeries& f, const TruncSeries& g) {
    if (f.trunc_ != g.trunc_) {
      throw Error(ErrorKind::TruncationMismatch,
                  std::to_string(f.trunc_) + " vs " + std::to_string(g.trunc_));
    }
  }

  int trunc_;
  int arity_;
  std::map<int, K> terms_;
};

template <typename K>
TruncSeries<K> ts_add(const TruncSeries<K>& f, const TruncSeries<K>& g) { return f + g; }
template <typename K>
TruncSeries<K> ts_mul(const TruncSeries<K>& f, const TruncSeries<K>& g) { return f * g; }
template <typename K>
std::optional<int> ts_order(const TruncSeries<K>& f, const std::map<int, Rat>& assignment = {}) {
  return f.order(assignment);
}
template <typename K>
K ts_lc(const TruncSeries<K>& f, const std::map<int, Rat>& assignment = {}) {
  return f.leading_coeff(assignment);
}

}  // namespace semimod
