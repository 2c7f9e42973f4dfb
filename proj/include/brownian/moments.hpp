#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace brownian {

/// Streaming mean and co-moment matrix over fixed-dimension observations
/// (Welford update, Chan et al. pairwise merge).
class MomentAccumulator {
 public:
  MomentAccumulator() = default;
  explicit MomentAccumulator(std::size_t dimension);

  void add(std::span<const double> x);
  void merge(const MomentAccumulator& other);

  std::size_t dimension() const { return dimension_; }
  std::uint64_t count() const { return count_; }
  double mean(std::size_t i) const { return mean_[i]; }

  /// Sum of (x_i - mean_i)(x_j - mean_j).
  double comoment(std::size_t i, std::size_t j) const { return comoment_[i * dimension_ + j]; }

  /// Unbiased sample covariance; requires count() >= 2.
  double covariance(std::size_t i, std::size_t j) const;

  /// Sample covariance of a.x and b.x for coefficient vectors a and b.
  double covariance(std::span<const double> a, std::span<const double> b) const;

 private:
  std::size_t dimension_ = 0;
  std::uint64_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> comoment_;
  std::vector<double> scratch_;
};

}  // namespace brownian
