#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "brownian/dyadic.hpp"
#include "brownian/moments.hpp"
#include "brownian/noise.hpp"

namespace brownian {

/// Retained samples per probe are capped; larger ensembles keep every
/// ceil(N / cap)-th seed.
inline constexpr std::size_t kSampleCap = 1'000'000;

struct EnsembleConfig {
  std::uint32_t horizon = 1;
  std::uint32_t level = 0;
  std::uint64_t paths = 1;
  std::uint64_t base_seed = 0;
  /// Grid points whose values are accumulated. Empty means every grid point.
  std::vector<Dyadic> probes;
  bool retain_samples = false;
  std::size_t sample_cap = kSampleCap;
};

struct RunOptions {
  std::shared_ptr<const NoiseGenerator> generator = default_generator();
  unsigned workers = 1;  // 0 = hardware concurrency
};

struct SeedRange {
  std::uint64_t first;
  std::uint64_t count;
};

/// N independent paths summarized at a fixed set of probe times.
class Ensemble {
 public:
  const EnsembleConfig& config() const { return config_; }
  const std::string& generator_id() const { return generator_id_; }
  const std::vector<Dyadic>& probes() const { return probes_; }
  const std::vector<SeedRange>& seed_ranges() const { return seed_ranges_; }
  std::uint64_t paths() const { return moments_.count(); }
  const MomentAccumulator& moments() const { return moments_; }

  /// Position of t among the probes; throws if t is off-grid or not a probe.
  std::size_t probe_index(Dyadic t) const;
  bool is_probe(Dyadic t) const;

  bool has_samples() const { return !samples_.empty(); }
  /// Retained values of B(probe) in seed order.
  std::span<const double> samples(std::size_t probe) const { return samples_.at(probe); }
  std::uint64_t sample_stride() const { return sample_stride_; }

  /// Folds in an ensemble over a disjoint seed set with the same grid and probes.
  void merge(const Ensemble& other);

  /// Human-readable seed set, e.g. "1..100000".
  std::string seeds_text() const;

 private:
  friend Ensemble generate_ensemble(const EnsembleConfig&, const RunOptions&);

  EnsembleConfig config_;
  std::string generator_id_;
  std::vector<Dyadic> probes_;
  std::vector<SeedRange> seed_ranges_;
  MomentAccumulator moments_;
  std::vector<std::vector<double>> samples_;
  std::uint64_t sample_stride_ = 1;
};

/// Paths from seeds base_seed .. base_seed + paths - 1.
Ensemble generate_ensemble(const EnsembleConfig& config, const RunOptions& options = {});

}  // namespace brownian
