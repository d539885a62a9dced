#pragma once

// Test-only reference computations. Nothing here calls into the library's
// reward, oracle or estimator code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace fcucb::reference {

/// Nonempty subsets of {0..k-1} with size <= m, via bitmasks, sorted by
/// (size, lexicographic).
inline std::vector<std::vector<std::uint32_t>> bitmask_subsets(std::size_t k,
                                                               std::size_t m) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) s.push_back(i);
    }
    if (s.size() <= m) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

using GammaFn = std::function<double(std::uint32_t arm, std::size_t id,
                                     std::size_t size)>;

/// sum_{i in S} gamma(i, S) * values[i], arms in ascending order.
inline double brute_reward(const std::vector<double>& values,
                           const std::vector<std::uint32_t>& combo,
                           std::size_t id, const GammaFn& gamma) {
  double total = 0.0;
  for (auto a : combo) total += gamma(a, id, combo.size()) * values[a];
  return total;
}

struct BruteGaps {
  double opt = -std::numeric_limits<double>::infinity();
  std::optional<double> delta_min;
  std::optional<double> delta_max;
};

/// Gap statistics straight from the definitions, with the same 1e-9
/// relative optimality tolerance.
inline BruteGaps brute_gaps(const std::vector<double>& rewards) {
  BruteGaps g;
  for (double r : rewards) g.opt = std::max(g.opt, r);
  auto equal = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
  };
  std::optional<double> hi, lo;
  for (double r : rewards) {
    if (equal(r, g.opt)) continue;
    hi = hi ? std::max(*hi, r) : r;
    lo = lo ? std::min(*lo, r) : r;
  }
  if (hi) {
    g.delta_min = g.opt - *hi;
    g.delta_max = g.opt - *lo;
  }
  return g;
}

}  // namespace fcucb::reference
