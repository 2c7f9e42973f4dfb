#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "brownian/dyadic.hpp"
#include "brownian/noise.hpp"

namespace brownian {

/// Finest level accepted for dense storage.
inline constexpr std::uint32_t kMaxLevel = 30;

/// One realization of B on the grid {k / 2^level : 0 <= k <= horizon * 2^level}.
/// Immutable once built; entry k holds B(k / 2^level).
class DyadicPath {
 public:
  std::uint32_t horizon() const { return horizon_; }
  std::uint32_t level() const { return level_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& generator_id() const { return generator_id_; }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }

  /// Grid time of index k.
  Dyadic time_at(std::uint64_t k) const { return Dyadic::canonical(k, level_); }

  /// Value at a dyadic on this path's grid; throws std::out_of_range otherwise.
  double at(Dyadic r) const;

  /// The coarser path at level m <= level(), taking every 2^(level - m)-th entry.
  DyadicPath downsample(std::uint32_t m) const;

  friend bool operator==(const DyadicPath&, const DyadicPath&) = default;

 private:
  DyadicPath(std::uint32_t horizon, std::uint32_t level, std::uint64_t seed, std::string generator_id,
             std::vector<double> values);

  friend DyadicPath construct_level0(std::uint32_t, const NoiseSource&);
  friend DyadicPath refine(const DyadicPath&, const NoiseSource&);

  std::uint32_t horizon_;
  std::uint32_t level_;
  std::uint64_t seed_;
  std::string generator_id_;
  std::vector<double> values_;
};

/// B(0) = 0 and B(k) = X_1 + ... + X_k for k = 1..horizon.
DyadicPath construct_level0(std::uint32_t horizon, const NoiseSource& src);

/// One midpoint-displacement step: level n to n + 1. Even entries are copied;
/// entry 2l+1 is the neighbour average plus X_{(2l+1)/2^(n+1)} / sqrt(2^(n+2)).
DyadicPath refine(const DyadicPath& path, const NoiseSource& src);

/// Repeated refine up to target_level.
DyadicPath refine_to(const DyadicPath& path, std::uint32_t target_level, const NoiseSource& src);

/// construct_level0 followed by refine_to.
DyadicPath construct(std::uint32_t horizon, std::uint32_t level, const NoiseSource& src);

/// Stored value on grid points, linear interpolation between them otherwise.
double evaluate(const DyadicPath& path, double t);

/// Writes the `t,value` table: exact decimal times, 17 significant digits.
void write_csv(std::ostream& out, const DyadicPath& path);

/// printf("%.17g") of a double.
std::string format_round_trip(double v);

}  // namespace brownian
