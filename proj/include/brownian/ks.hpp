#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace brownian {

/// Smallest sample size for which the asymptotic Kolmogorov law is used.
inline constexpr std::size_t kMinKsSample = 1000;

/// P(K > lambda) for the limiting Kolmogorov distribution K = sup |Brownian bridge|.
double kolmogorov_survival(double lambda);

/// lambda with kolmogorov_survival(lambda) == significance.
double kolmogorov_critical(double significance);

struct KsResult {
  double statistic = 0.0;  // sup-distance D
  double scaled = 0.0;     // sqrt(effective n) * D
  double p_value = 1.0;
  double critical = 0.0;   // rejection threshold on D at the given significance
  bool rejected = false;
};

/// One-sample test of `samples` against a continuous CDF.
KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf,
                       double significance);

/// Two-sample test.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double significance);

/// Standard normal CDF.
double standard_normal_cdf(double x);

}  // namespace brownian
