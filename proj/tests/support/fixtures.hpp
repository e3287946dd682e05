#pragma once

#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <semimod/semimod.hpp>

namespace semimod::fixtures {

/// The four semigroups of the realization matrix.
inline std::vector<std::pair<int, int>> matrix_semigroups() { return {{4, 9}, {5, 7}, {5, 8}, {7, 9}}; }

/// Every <alpha, beta> with 2 <= alpha < beta, coprime, alpha*beta <= limit.
inline std::vector<std::pair<int, int>> small_semigroups(int limit = 80) {
  std::vector<std::pair<int, int>> out;
  for (int a = 2; a * (a + 1) <= limit; ++a) {
    for (int b = a + 1; a * b <= limit; ++b) {
      if (std::gcd(a, b) == 1) out.emplace_back(a, b);
    }
  }
  return out;
}

/// Random parameterization: each coefficient is zero with probability 1/4,
/// otherwise p/q with p in [-3, 3] and q in [1, 3].
inline PuiseuxParam random_param(const Semigroup& s, std::mt19937& rng) {
  PuiseuxParam p = PuiseuxParam::monomial(s);
  std::uniform_int_distribution<int> zero(0, 3), num(-3, 3), den(1, 3);
  for (auto& c : p.coeffs) {
    if (zero(rng) == 0) {
      c = 0;
    } else {
      c = Rat(num(rng), den(rng));
      c.canonicalize();
    }
  }
  return p;
}

/// Random pair (p, q) in [0, 2ab] with |p - q| a gap.
inline std::pair<int, int> random_gap_pair(const Semigroup& s, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2 * s.product());
  while (true) {
    const int p = pick(rng), q = pick(rng);
    if (!s.contains(p > q ? p - q : q - p)) return {p, q};
  }
}

}  // namespace semimod::fixtures
