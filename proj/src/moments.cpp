#include "brownian/moments.hpp"

#include <stdexcept>

namespace brownian {

MomentAccumulator::MomentAccumulator(std::size_t dimension)
    : dimension_(dimension),
      mean_(dimension, 0.0),
      comoment_(dimension * dimension, 0.0),
      scratch_(dimension, 0.0) {}

void MomentAccumulator::add(std::span<const double> x) {
  if (x.size() != dimension_) throw std::invalid_argument("observation has the wrong dimension");
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  for (std::size_t i = 0; i < dimension_; ++i) {
    scratch_[i] = x[i] - mean_[i];
    mean_[i] += scratch_[i] * inv;
  }
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double after = x[i] - mean_[i];
    double* row = &comoment_[i * dimension_];
    for (std::size_t j = 0; j < dimension_; ++j) row[j] += after * scratch_[j];
  }
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.dimension_ != dimension_) throw std::invalid_argument("cannot merge accumulators of different dimension");
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  for (std::size_t i = 0; i < dimension_; ++i) scratch_[i] = other.mean_[i] - mean_[i];
  const double w = na * nb / n;
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = 0; j < dimension_; ++j) {
      comoment_[i * dimension_ + j] += other.comoment_[i * dimension_ + j] + scratch_[i] * scratch_[j] * w;
    }
  }
  for (std::size_t i = 0; i < dimension_; ++i) mean_[i] += scratch_[i] * (nb / n);
  count_ += other.count_;
}

double MomentAccumulator::covariance(std::size_t i, std::size_t j) const {
  if (count_ < 2) throw std::domain_error("covariance needs at least two observations");
  return comoment(i, j) / static_cast<double>(count_ - 1);
}

double MomentAccumulator::covariance(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != dimension_ || b.size() != dimension_) throw std::invalid_argument("coefficient vector has the wrong dimension");
  if (count_ < 2) throw std::domain_error("covariance needs at least two observations");
  double total = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (b[j] != 0.0) total += a[i] * b[j] * comoment(i, j);
    }
  }
  return total / static_cast<double>(count_ - 1);
}

}  // namespace brownian
