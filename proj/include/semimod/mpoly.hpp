#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace semimod {

/// Sparse monomial X_{v1}^{e1} ... with variables sorted ascending. Variables
/// are 1-based to match the coefficient indices of the parameterization.
class Monomial {
 public:
  using Factor = std::pair<std::uint16_t, std::uint16_t>;

  Monomial() = default;

  static Monomial var(int index, int exponent = 1) {
    Monomial m;
    if (exponent > 0) {
      m.factors_.emplace_back(static_cast<std::uint16_t>(index),
                              static_cast<std::uint16_t>(exponent));
    }
    return m;
  }

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }

  int degree() const noexcept {
    int d = 0;
    for (auto [v, e] : factors_) d += e;
    return d;
  }

  int exponent(int index) const noexcept {
    for (auto [v, e] : factors_) {
      if (v == index) return e;
    }
    return 0;
  }

  int max_var() const noexcept { return factors_.empty() ? 0 : factors_.back().first; }

  Monomial operator*(const Monomial& o) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto i = factors_.begin(), j = o.factors_.begin();
    while (i != factors_.end() || j != o.factors_.end()) {
      if (j == o.factors_.end() || (i != factors_.end() && i->first < j->first)) {
        out.factors_.push_back(*i++);
      } else if (i == factors_.end() || j->first < i->first) {
        out.factors_.push_back(*j++);
      } else {
        out.factors_.emplace_back(i->first, static_cast<std::uint16_t>(i->second + j->second));
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// Removes variable `index`, returning its exponent.
  Monomial without(int index, int* exponent = nullptr) const {
    Monomial out;
    for (auto f : factors_) {
      if (f.first == index) {
        if (exponent) *exponent = f.second;
      } else {
        out.factors_.push_back(f);
      }
    }
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const {
    std::string out;
    for (auto [v, e] : factors_) {
      if (!out.empty()) out += "*";
      out += "X_" + std::to_string(v);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic comparison with X_1 < X_2 < ...: total degree first,
/// then the exponent of the highest variable decides.
inline bool grlex_less(const Monomial& x, const Monomial& y) {
  const int dx = x.degree(), dy = y.degree();
  if (dx != dy) return dx < dy;
  auto i = x.factors().rbegin(), j = y.factors().rbegin();
  for (; i != x.factors().rend() && j != y.factors().rend(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first;
    if (i->second != j->second) return i->second < j->second;
  }
  return i == x.factors().rend() && j != y.factors().rend();
}

struct GrlexGreater {
  bool operator()(const Monomial& x, const Monomial& y) const { return grlex_less(y, x); }
};

/// Sparse multivariate polynomial over Rat in X_1..X_arity. Terms are kept in
/// decreasing grlex order with no zero coefficients.
class MPoly {
 public:
  using Term = std::pair<Monomial, Rat>;

  MPoly() = default;
  explicit MPoly(int arity) : arity_(arity) {}
  MPoly(int arity, const Rat& constant) : arity_(arity) {
    if (!semimod::is_zero(constant)) terms_.emplace_back(Monomial{}, constant);
  }

  static MPoly var(int arity, int index) {
    if (index < 1 || index > arity) {
      throw Error(ErrorKind::ArityMismatch,
                  "X_" + std::to_string(index) + " outside arity " + std::to_string(arity));
    }
    MPoly p(arity);
    p.terms_.emplace_back(Monomial::var(index), Rat(1));
    return p;
  }

  static MPoly from_terms(int arity, std::vector<Term> terms) {
    MPoly p(arity);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  int arity() const noexcept { return arity_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  Rat constant_value() const {
    for (const auto& [m, c] : terms_) {
      if (m.is_one()) return c;
    }
    return Rat(0);
  }

  int max_var() const noexcept {
    int v = 0;
    for (const auto& [m, c] : terms_) v = std::max(v, m.max_var());
    return v;
  }

  int degree_in(int index) const noexcept {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(index));
    return d;
  }

  int total_degree() const noexcept {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  MPoly operator-() const {
    MPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(const MPoly& x, const MPoly& y) { return merge(x, y, Rat(1)); }
  friend MPoly operator-(const MPoly& x, const MPoly& y) { return merge(x, y, Rat(-1)); }

  friend MPoly operator*(const MPoly& x, const MPoly& y) {
    check_arity(x, y);
    if (x.is_zero() || y.is_zero()) return MPoly(x.arity_);
    if (y.is_constant()) return x * y.terms_[0].second;
    if (x.is_constant()) return y * x.terms_[0].second;
    std::map<Monomial, Rat, GrlexGreater> acc;
    for (const auto& [mx, cx] : x.terms_) {
      for (const auto& [my, cy] : y.terms_) acc[mx * my] += cx * cy;
    }
    MPoly out(x.arity_);
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (!semimod::is_zero(c)) out.terms_.emplace_back(m, std::move(c));
    }
    return out;
  }

  friend MPoly operator*(const MPoly& x, const Rat& s) {
    if (semimod::is_zero(s)) return MPoly(x.arity_);
    MPoly out = x;
    for (auto& [m, c] : out.terms_) c *= s;
    return out;
  }
  friend MPoly operator*(const Rat& s, const MPoly& x) { return x * s; }

  friend bool operator==(const MPoly& x, const MPoly& y) {
    return x.arity_ == y.arity_ && x.terms_ == y.terms_;
  }

  /// Substitutes the given variables (1-based index -> value).
  MPoly substitute(const std::map<int, Rat>& assignment) const {
    std::map<Monomial, Rat, GrlexGreater> acc;
    for (const auto& [m, c] : terms_) {
      Rat coeff = c;
      Monomial rest;
      for (auto [v, e] : m.factors()) {
        auto it = assignment.find(v);
        if (it == assignment.end()) {
          rest = rest * Monomial::var(v, e);
        } else {
          Rat p(1);
          for (int k = 0; k < e; ++k) p *= it->second;
          coeff *= p;
        }
      }
      if (!semimod::is_zero(coeff)) acc[rest] += coeff;
    }
    MPoly out(arity_);
    for (auto& [m, c] : acc) {
      if (!semimod::is_zero(c)) out.terms_.emplace_back(m, std::move(c));
    }
    return out;
  }

  /// Full evaluation; missing variables count as zero.
  Rat evaluate(const std::vector<Rat>& values) const {
    Rat out(0);
    for (const auto& [m, c] : terms_) {
      Rat t = c;
      for (auto [v, e] : m.factors()) {
        const Rat x = v < static_cast<int>(values.size()) ? values[v] : Rat(0);
        for (int k = 0; k < e; ++k) t *= x;
      }
      out += t;
    }
    return out;
  }

  /// Splits p = coeff * X_index + rest with rest free of X_index. Returns
  /// nullopt when p is not affine in X_index.
  std::optional<std::pair<MPoly, MPoly>> split_affine(int index) const {
    MPoly coeff(arity_), rest(arity_);
    std::vector<Term> ct, rt;
    for (const auto& [m, c] : terms_) {
      int e = 0;
      Monomial reduced = m.without(index, &e);
      if (e == 0) {
        rt.emplace_back(m, c);
      } else if (e == 1) {
        ct.emplace_back(std::move(reduced), c);
      } else {
        return std::nullopt;
      }
    }
    return std::make_pair(from_terms(arity_, std::move(ct)), from_terms(arity_, std::move(rt)));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool negative = sgn(c) < 0;
      const Rat mag = negative ? Rat(-c) : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        out += semimod::to_string(mag);
      } else {
        if (mag != 1) out += semimod::to_string(mag) + "*";
        out += m.to_string();
      }
    }
    return out;
  }

 private:
  static void check_arity(const MPoly& x, const MPoly& y) {
    if (x.arity_ != y.arity_) {
      throw Error(ErrorKind::ArityMismatch,
                  std::to_string(x.arity_) + " vs " + std::to_string(y.arity_));
    }
  }

  static MPoly merge(const MPoly& x, const MPoly& y, const Rat& sign) {
    check_arity(x, y);
    MPoly out(x.arity_);
    out.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto i = x.terms_.begin(), j = y.terms_.begin();
    while (i != x.terms_.end() || j != y.terms_.end()) {
      if (j == y.terms_.end() || (i != x.terms_.end() && grlex_less(j->first, i->first))) {
        out.terms_.push_back(*i++);
      } else if (i == x.terms_.end() || grlex_less(i->first, j->first)) {
        out.terms_.emplace_back(j->first, sign * j->second);
        ++j;
      } else {
        Rat c = i->second + sign * j->second;
        if (!semimod::is_zero(c)) out.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void canonicalize() {
    std::map<Monomial, Rat, GrlexGreater> acc;
    for (auto& [m, c] : terms_) acc[m] += c;
    terms_.clear();
    for (auto& [m, c] : acc) {
      if (!semimod::is_zero(c)) terms_.emplace_back(m, std::move(c));
    }
  }

  int arity_ = 0;
  std::vector<Term> terms_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

// Free-function spellings of the ring operations.
inline MPoly mp_add(const MPoly& p, const MPoly& q) { return p + q; }
inline MPoly mp_mul(const MPoly& p, const MPoly& q) { return p * q; }
inline MPoly mp_scale(const MPoly& p, const Rat& s) { return p * s; }
inline MPoly mp_substitute(const MPoly& p, const std::map<int, Rat>& assignment) {
  return p.substitute(assignment);
}

}  // namespace semimod
