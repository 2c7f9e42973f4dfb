#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "brownian/defaults.hpp"
#include "brownian/dyadic.hpp"
#include "brownian/ensemble.hpp"
#include "brownian/report.hpp"

namespace brownian {

struct IntervalPair {
  Dyadic r1, r2, r3, r4;
};

/// Distributional checks of B on a dyadic grid: means, the min covariance,
/// Gaussian marginals, independent and stationary increments.
struct LawSuiteConfig {
  std::uint32_t horizon = defaults::kLawHorizon;
  std::uint32_t level = defaults::kLawLevel;
  std::uint64_t paths = defaults::kLawPaths;
  std::uint64_t base_seed = 0;
  std::vector<Dyadic> covariance_points;
  std::vector<Dyadic> marginal_points;
  std::vector<IntervalPair> interval_pairs;

  /// Registered point sets from defaults.hpp.
  static LawSuiteConfig registered();
};

StatReport run_law_suite(const LawSuiteConfig& config, const RunOptions& options = {});

struct ModulusSuiteConfig {
  std::uint32_t level = defaults::kModulusLevel;
  std::uint32_t measurement_level = defaults::kMeasurementLevel;
  std::uint32_t horizon = 0;  // 0 = minimum for `level`
  std::uint64_t paths = defaults::kModulusPaths;
  std::uint64_t base_seed = 0;
  std::vector<double> alphas{defaults::kModulusAlphas.begin(), defaults::kModulusAlphas.end()};
  std::uint32_t table_max = defaults::kBoundTableMax;
  std::uint32_t series_max = defaults::kSeriesMax;
};

StatReport run_modulus_suite(const ModulusSuiteConfig& config, const RunOptions& options = {});

struct EtemadiSuiteConfig {
  std::vector<double> alphas;
  std::vector<std::uint32_t> rademacher_steps{defaults::kRademacherSteps.begin(), defaults::kRademacherSteps.end()};
  std::vector<std::uint32_t> gaussian_steps{defaults::kGaussianSteps.begin(), defaults::kGaussianSteps.end()};
  std::uint64_t trials = defaults::kEtemadiTrials;
  std::uint64_t seed = 0;

  static std::vector<double> default_alphas();
};

StatReport run_etemadi_suite(const EtemadiSuiteConfig& config, unsigned workers = 1);

/// Rows of the bound table: n, interval_tail_bound(n, alpha) per alpha,
/// modulus_tail_term(n) and its running sum.
Json bound_table(std::uint32_t from, std::uint32_t to, const std::vector<double>& alphas);

}  // namespace brownian
