#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace semimod {

/// A gap of <alpha, beta> together with its lattice coordinates:
/// value = alpha*beta - a*alpha - b*beta, 1 <= a < beta, 1 <= b < alpha.
struct Gap {
  int value = 0;
  int a = 0;
  int b = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

/// Canonical decomposition eps = e1*alpha + e2*beta with 0 <= e2 < alpha.
struct Decomposition {
  int e1 = 0;
  int e2 = 0;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Two-generator numerical semigroup <alpha, beta>.
///
/// Membership is tabulated on [0, alpha*beta + c]; beyond the table everything
/// at or above the conductor is a member.
class Semigroup {
 public:
  Semigroup(int alpha, int beta) : alpha_(alpha), beta_(beta) {
    if (alpha <= 1 || beta <= alpha) {
      throw Error(ErrorKind::BadOrder, "need 1 < alpha < beta, got <" + std::to_string(alpha) +
                                           "," + std::to_string(beta) + ">");
    }
    if (std::gcd(alpha, beta) != 1) {
      throw Error(ErrorKind::NotCoprime, "gcd(" + std::to_string(alpha) + "," +
                                             std::to_string(beta) + ") != 1");
    }
    conductor_ = (alpha - 1) * (beta - 1);
    table_.assign(static_cast<std::size_t>(window()) + 1, false);
    for (int e2 = 0; e2 * beta <= window(); ++e2) {
      for (int n = e2 * beta; n <= window(); n += alpha) table_[n] = true;
    }
    beta_inv_mod_alpha_ = 1;
    while ((beta_inv_mod_alpha_ * beta) % alpha != 1) ++beta_inv_mod_alpha_;
    for (int n = 1; n < conductor_; ++n) {
      if (!table_[n]) gaps_.push_back(make_gap(n));
    }
  }

  int alpha() const noexcept { return alpha_; }
  int beta() const noexcept { return beta_; }
  int product() const noexcept { return alpha_ * beta_; }
  int conductor() const noexcept { return conductor_; }

  /// Upper end of the tabulated range, alpha*beta + c.
  int window() const noexcept { return alpha_ * beta_ + conductor_; }

  bool contains(long long n) const noexcept {
    if (n < 0) return false;
    if (n >= conductor_) return true;
    return table_[static_cast<std::size_t>(n)];
  }

  bool is_gap(long long n) const noexcept { return n > 0 && !contains(n); }

  /// All gaps in increasing order.
  const std::vector<Gap>& gaps() const noexcept { return gaps_; }

  std::pair<int, int> gap_coords(int g) const {
    if (!is_gap(g)) throw Error(ErrorKind::NotAGap, std::to_string(g) + " is not a gap");
    Gap gap = make_gap(g);
    return {gap.a, gap.b};
  }

  Gap gap(int g) const {
    if (!is_gap(g)) throw Error(ErrorKind::NotAGap, std::to_string(g) + " is not a gap");
    return make_gap(g);
  }

  /// Inverse of gap_coords.
  int coord_gap(int a, int b) const noexcept { return alpha_ * beta_ - a * alpha_ - b * beta_; }

  Decomposition decompose(long long eps) const {
    if (!contains(eps)) {
      throw Error(ErrorKind::NotInSemigroup, std::to_string(eps) + " is not in the semigroup");
    }
    int r = static_cast<int>(eps % alpha_);
    int e2 = (r * beta_inv_mod_alpha_) % alpha_;
    return {static_cast<int>((eps - static_cast<long long>(e2) * beta_) / alpha_), e2};
  }

  std::string to_string() const {
    return "<" + std::to_string(alpha_) + "," + std::to_string(beta_) + ">";
  }

  friend bool operator==(const Semigroup& x, const Semigroup& y) noexcept {
    return x.alpha_ == y.alpha_ && x.beta_ == y.beta_;
  }

 private:
  Gap make_gap(int g) const {
    // g = ab - a*alpha - b*beta  =>  b = -g * beta^{-1} (mod alpha)
    int b = ((alpha_ - g % alpha_) % alpha_) * beta_inv_mod_alpha_ % alpha_;
    int a = (alpha_ * beta_ - g - b * beta_) / alpha_;
    return {g, a, b};
  }

  int alpha_;
  int beta_;
  int conductor_ = 0;
  int beta_inv_mod_alpha_ = 1;
  std::vector<bool> table_;
  std::vector<Gap> gaps_;
};

inline Semigroup make_semigroup(int alpha, int beta) { return Semigroup(alpha, beta); }

}  // namespace semimod
