#pragma once

#include "brownian/dyadic.hpp"
#include "brownian/ensemble.hpp"
#include "brownian/report.hpp"

namespace brownian {

/// Width of moment bands, in standard errors.
inline constexpr double kBandSigmas = 4.0;
/// Significance level of every KS test.
inline constexpr double kKsSignificance = 0.01;

/// Cov(B(s), B(t)) = min(s, t).
double brownian_covariance(Dyadic s, Dyadic t);

/// Cov(B(r2) - B(r1), B(r4) - B(r3)) by bilinear expansion of min.
double increment_covariance(Dyadic r1, Dyadic r2, Dyadic r3, Dyadic r4);

/// E B(t) = 0; band 4 sqrt(t / N).
StatRecord check_mean(const Ensemble& ens, Dyadic t);

/// Sample Cov(B(s), B(t)) against min(s, t). The standard error is the
/// normal-theory sqrt((s t + min(s,t)^2) / N) evaluated at the hypothesised law.
StatRecord check_covariance(const Ensemble& ens, Dyadic s, Dyadic t);

/// Sample correlation of B(r2) - B(r1) and B(r4) - B(r3), 0 <= r1 < r2 <= r3 < r4;
/// passes when within 4 / sqrt(N) of zero.
StatRecord check_increment_independence(const Ensemble& ens, Dyadic r1, Dyadic r2, Dyadic r3, Dyadic r4);

/// Var(B(r2) - B(r1)) against r2 - r1.
StatRecord check_increment_variance(const Ensemble& ens, Dyadic r1, Dyadic r2);

/// Two-sample KS between retained B(r2) - B(r1) and B(r2 - r1).
StatRecord check_stationarity(const Ensemble& ens, Dyadic r1, Dyadic r2);

/// One-sample KS of B(r) / sqrt(r) against N(0, 1); r > 0.
StatRecord check_marginal_normal(const Ensemble& ens, Dyadic r);

}  // namespace brownian
