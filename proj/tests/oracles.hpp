#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "brownian/path.hpp"

namespace brownian::testing {

// Plain double loop: for every window start k, scan every grid index and keep
// those whose time lies in [k/2^n, (k+2)/2^n].
inline std::vector<double> brute_force_modulus(const DyadicPath& path, std::uint32_t n) {
  const std::uint64_t scale = 1ull << (path.level() - n);  // grid steps per 1/2^n
  const std::uint64_t windows = (static_cast<std::uint64_t>(n) + 1) * (1ull << n) + 1;
  std::vector<double> out;
  for (std::uint64_t k = 0; k < windows; ++k) {
    const std::uint64_t lo = k * scale, hi = (k + 2) * scale;
    double m = 0.0;
    for (std::uint64_t i = 0; i < path.size(); ++i) {
      if (i < lo || i > hi) continue;
      m = std::max(m, std::abs(path[i] - path[lo]));
    }
    out.push_back(m);
  }
  return out;
}

// Rademacher walk probabilities by direct enumeration of sign patterns.
struct RademacherOracle {
  double lhs;
  double rhs_factor;
};

inline RademacherOracle brute_force_rademacher(std::uint32_t n, double alpha) {
  std::vector<double> step_tail(n, 0.0);
  double lhs = 0.0;
  const double weight = std::ldexp(1.0, -static_cast<int>(n));
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    int s = 0, max_abs = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      s += (mask >> k) & 1u ? 1 : -1;
      max_abs = std::max(max_abs, std::abs(s));
      if (std::abs(s) >= alpha) step_tail[k] += weight;
    }
    if (max_abs >= 3 * alpha) lhs += weight;
  }
  return {lhs, *std::max_element(step_tail.begin(), step_tail.end())};
}

}  // namespace brownian::testing
