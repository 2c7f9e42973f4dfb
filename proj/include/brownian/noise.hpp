#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "brownian/dyadic.hpp"

namespace brownian {

/// Maps (seed, canonical dyadic) to a real number. Implementations must be
/// pure: the same arguments always give the same value.
class NoiseGenerator {
 public:
  virtual ~NoiseGenerator() = default;
  virtual double draw(std::uint64_t seed, Dyadic r) const = 0;
  virtual std::string id() const = 0;
};

/// Standard normal draws keyed by (seed, numerator, level) through Philox4x32-10,
/// converted with Box-Muller.
class PhiloxNormalGenerator final : public NoiseGenerator {
 public:
  double draw(std::uint64_t seed, Dyadic r) const override;
  std::string id() const override { return "philox4x32-10/box-muller"; }
};

/// Multiplies another generator's draws by a constant. A scale of 0 gives the
/// zero field. Used for fault injection.
class ScaledGenerator final : public NoiseGenerator {
 public:
  ScaledGenerator(std::shared_ptr<const NoiseGenerator> base, double scale);
  double draw(std::uint64_t seed, Dyadic r) const override;
  std::string id() const override;

 private:
  std::shared_ptr<const NoiseGenerator> base_;
  double scale_;
};

std::shared_ptr<const NoiseGenerator> default_generator();

/// The family (X_r) for one seed.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed,
                       std::shared_ptr<const NoiseGenerator> generator = default_generator());

  std::uint64_t seed() const { return seed_; }
  std::string generator_id() const { return generator_->id(); }
  const std::shared_ptr<const NoiseGenerator>& generator() const { return generator_; }

  double operator()(Dyadic r) const { return generator_->draw(seed_, r); }

 private:
  std::uint64_t seed_;
  std::shared_ptr<const NoiseGenerator> generator_;
};

inline double noise_at(const NoiseSource& src, Dyadic r) { return src(r); }

}  // namespace brownian
