#include "brownian/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brownian/ks.hpp"

namespace brownian {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string name(Dyadic t) { return t.to_decimal(); }

void require_on_grid(const Ensemble& ens, Dyadic t) {
  if (!t.on_grid(ens.config().level) || t.value() > ens.config().horizon) {
    throw std::invalid_argument("time " + t.to_decimal() + " is not on the ensemble grid");
  }
}

/// Coefficient vector over the probes for sum c_i B(t_i). B(0) is identically
/// zero, so time 0 needs no probe.
std::vector<double> combination(const Ensemble& ens, std::initializer_list<std::pair<Dyadic, double>> terms) {
  std::vector<double> coeff(ens.probes().size(), 0.0);
  for (const auto& [t, c] : terms) {
    require_on_grid(ens, t);
    if (t == Dyadic{} && !ens.is_probe(t)) continue;
    coeff[ens.probe_index(t)] += c;
  }
  return coeff;
}

std::vector<double> sample_of(const Ensemble& ens, Dyadic t) {
  if (!ens.has_samples()) throw std::logic_error("ensemble was generated without retained samples");
  require_on_grid(ens, t);
  if (t == Dyadic{} && !ens.is_probe(t)) return std::vector<double>(ens.samples(0).size(), 0.0);
  const auto s = ens.samples(ens.probe_index(t));
  return {s.begin(), s.end()};
}

void require_paths(const Ensemble& ens, std::uint64_t minimum) {
  if (ens.paths() < minimum) throw std::invalid_argument("not enough paths for this check");
}

}  // namespace

double brownian_covariance(Dyadic s, Dyadic t) { return std::min(s, t).value(); }

double increment_covariance(Dyadic r1, Dyadic r2, Dyadic r3, Dyadic r4) {
  return brownian_covariance(r2, r4) - brownian_covariance(r2, r3) - brownian_covariance(r1, r4) +
         brownian_covariance(r1, r3);
}

StatRecord check_mean(const Ensemble& ens, Dyadic t) {
  require_paths(ens, 2);
  const std::size_t i = ens.probe_index(t);
  const double n = static_cast<double>(ens.paths());
  StatRecord r;
  r.check = "mean";
  r.quantity = "E B(" + name(t) + ")";
  r.target = 0.0;
  r.estimate = ens.moments().mean(i);
  r.stderr_ = std::sqrt(t.value() / n);
  r.band = kBandSigmas * r.stderr_;
  r.pass = std::abs(r.estimate - r.target) <= r.band;
  r.tolerance = "4 * sqrt(t / N)";
  r.seeds = ens.seeds_text();
  return r;
}

StatRecord check_covariance(const Ensemble& ens, Dyadic s, Dyadic t) {
  require_paths(ens, 2);
  require_on_grid(ens, s);
  require_on_grid(ens, t);
  const auto a = combination(ens, {{s, 1.0}});
  const auto b = combination(ens, {{t, 1.0}});
  const double n = static_cast<double>(ens.paths());
  const double target = brownian_covariance(s, t);
  StatRecord r;
  r.check = "covariance";
  r.quantity = "Cov(B(" + name(s) + "),B(" + name(t) + "))";
  r.target = target;
  r.estimate = ens.moments().covariance(a, b);
  r.stderr_ = std::sqrt((s.value() * t.value() + target * target) / n);
  r.band = kBandSigmas * r.stderr_;
  r.pass = std::abs(r.estimate - r.target) <= r.band;
  r.tolerance = "4 * sqrt((s*t + min(s,t)^2) / N)";
  r.seeds = ens.seeds_text();
  return r;
}

StatRecord check_increment_independence(const Ensemble& ens, Dyadic r1, Dyadic r2, Dyadic r3, Dyadic r4) {
  if (!(r1 < r2 && r2 <= r3 && r3 < r4)) throw std::invalid_argument("increments must satisfy r1 < r2 <= r3 < r4");
  require_paths(ens, 3);
  const auto a = combination(ens, {{r2, 1.0}, {r1, -1.0}});
  const auto b = combination(ens, {{r4, 1.0}, {r3, -1.0}});
  const auto& m = ens.moments();
  const double cov = m.covariance(a, b);
  const double corr = cov / std::sqrt(m.covariance(a, a) * m.covariance(b, b));
  const double target_cov = increment_covariance(r1, r2, r3, r4);
  const double target = target_cov / std::sqrt((r2.value() - r1.value()) * (r4.value() - r3.value()));
  const double n = static_cast<double>(ens.paths());

  StatRecord r;
  r.check = "increment-independence";
  r.quantity = "Corr(B(" + name(r2) + ")-B(" + name(r1) + "),B(" + name(r4) + ")-B(" + name(r3) + "))";
  r.target = target;
  r.estimate = corr;
  r.stderr_ = 1.0 / std::sqrt(n);
  r.band = kBandSigmas * r.stderr_;
  r.pass = std::abs(r.estimate - r.target) <= r.band;
  r.tolerance = "4 / sqrt(N)";
  r.seeds = ens.seeds_text();
  r.extra["covariance_target"] = target_cov;
  r.extra["covariance_estimate"] = cov;
  return r;
}

StatRecord check_increment_variance(const Ensemble& ens, Dyadic r1, Dyadic r2) {
  if (!(r1 < r2)) throw std::invalid_argument("increment requires r1 < r2");
  require_paths(ens, 2);
  const auto a = combination(ens, {{r2, 1.0}, {r1, -1.0}});
  const double n = static_cast<double>(ens.paths());
  const double target = subtract(r2, r1).value();
  StatRecord r;
  r.check = "increment-variance";
  r.quantity = "Var(B(" + name(r2) + ")-B(" + name(r1) + "))";
  r.target = target;
  r.estimate = ens.moments().covariance(a, a);
  r.stderr_ = target * std::sqrt(2.0 / n);
  r.band = kBandSigmas * r.stderr_;
  r.pass = std::abs(r.estimate - r.target) <= r.band;
  r.tolerance = "4 * (r2 - r1) * sqrt(2 / N)";
  r.seeds = ens.seeds_text();
  return r;
}

StatRecord check_stationarity(const Ensemble& ens, Dyadic r1, Dyadic r2) {
  if (!(r1 < r2)) throw std::invalid_argument("stationarity requires r1 < r2");
  const Dyadic gap = subtract(r2, r1);
  auto upper = sample_of(ens, r2);
  const auto lower = sample_of(ens, r1);
  for (std::size_t i = 0; i < upper.size(); ++i) upper[i] -= lower[i];
  const auto shifted = sample_of(ens, gap);
  const KsResult ks = ks_two_sample(upper, shifted, kKsSignificance);

  StatRecord r;
  r.check = "ks-stationarity";
  r.quantity = "B(" + name(r2) + ")-B(" + name(r1) + ") vs B(" + name(gap) + ")";
  r.target = 0.0;
  r.estimate = ks.statistic;
  r.stderr_ = kNaN;
  r.band = ks.critical;
  r.pass = !ks.rejected;
  r.tolerance = "two-sample KS, asymptotic Kolmogorov law, significance 0.01";
  r.seeds = ens.seeds_text();
  r.extra["p_value"] = ks.p_value;
  r.extra["samples"] = upper.size();
  return r;
}

StatRecord check_marginal_normal(const Ensemble& ens, Dyadic t) {
  if (t == Dyadic{}) throw std::invalid_argument("B(0) is degenerate; marginal test needs t > 0");
  auto values = sample_of(ens, t);
  const double scale = 1.0 / std::sqrt(t.value());
  for (auto& v : values) v *= scale;
  const KsResult ks = ks_one_sample(values, standard_normal_cdf, kKsSignificance);

  StatRecord r;
  r.check = "ks-marginal";
  r.quantity = "B(" + name(t) + ")/sqrt(" + name(t) + ") vs N(0,1)";
  r.target = 0.0;
  r.estimate = ks.statistic;
  r.stderr_ = kNaN;
  r.band = ks.critical;
  r.pass = !ks.rejected;
  r.tolerance = "one-sample KS, asymptotic Kolmogorov law, significance 0.01";
  r.seeds = ens.seeds_text();
  r.extra["p_value"] = ks.p_value;
  r.extra["samples"] = values.size();
  return r;
}

}  // namespace brownian
