#include "brownian/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "brownian/checks.hpp"
#include "brownian/etemadi.hpp"
#include "brownian/ks.hpp"
#include "brownian/modulus.hpp"

namespace brownian {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Dyadic registered_point(std::string_view text) {
  auto d = parse_dyadic(std::string(text));
  if (!d) throw std::logic_error("bad registered dyadic " + std::string(text));
  return *d;
}

void add_unique(std::vector<Dyadic>& set, Dyadic t) {
  if (std::find(set.begin(), set.end(), t) == set.end()) set.push_back(t);
}

Json dyadic_list(const std::vector<Dyadic>& points) {
  Json list = Json::array();
  for (const auto& p : points) list.push_back(p.to_decimal());
  return list;
}

std::string alpha_text(double a) {
  std::string s = std::to_string(a);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

LawSuiteConfig LawSuiteConfig::registered() {
  LawSuiteConfig c;
  for (auto p : defaults::kCovariancePoints) c.covariance_points.push_back(registered_point(p));
  for (auto p : defaults::kMarginalPoints) c.marginal_points.push_back(registered_point(p));
  for (const auto& q : defaults::kIntervalPairs) {
    c.interval_pairs.push_back(
        {registered_point(q[0]), registered_point(q[1]), registered_point(q[2]), registered_point(q[3])});
  }
  return c;
}

StatReport run_law_suite(const LawSuiteConfig& config, const RunOptions& options) {
  if (config.paths < defaults::kLawMinPaths) throw std::invalid_argument("verify-law needs at least 1000 paths");
  for (const auto& p : config.interval_pairs) {
    if (!(p.r1 < p.r2 && p.r2 <= p.r3 && p.r3 < p.r4)) {
      throw std::invalid_argument("interval pair must satisfy r1 < r2 <= r3 < r4");
    }
  }

  std::vector<Dyadic> probes;
  for (auto t : config.covariance_points) add_unique(probes, t);
  for (auto t : config.marginal_points) add_unique(probes, t);
  for (const auto& p : config.interval_pairs) {
    for (auto t : {p.r1, p.r2, p.r3, p.r4, subtract(p.r2, p.r1), subtract(p.r4, p.r3)}) add_unique(probes, t);
  }

  EnsembleConfig ec;
  ec.horizon = config.horizon;
  ec.level = config.level;
  ec.paths = config.paths;
  ec.base_seed = config.base_seed;
  ec.probes = probes;
  ec.retain_samples = true;
  const Ensemble ens = generate_ensemble(ec, options);

  StatReport report;
  report.suite = "verify-law";
  report.config["horizon"] = config.horizon;
  report.config["level"] = config.level;
  report.config["paths"] = config.paths;
  report.config["base_seed"] = config.base_seed;
  report.config["seeds"] = ens.seeds_text();
  report.config["generator"] = ens.generator_id();
  report.config["band_sigmas"] = kBandSigmas;
  report.config["ks_significance"] = kKsSignificance;
  report.config["ks_sample_stride"] = ens.sample_stride();
  report.config["covariance_points"] = dyadic_list(config.covariance_points);
  report.config["marginal_points"] = dyadic_list(config.marginal_points);
  Json pairs = Json::array();
  for (const auto& p : config.interval_pairs) pairs.push_back(dyadic_list({p.r1, p.r2, p.r3, p.r4}));
  report.config["interval_pairs"] = std::move(pairs);

  for (auto t : config.marginal_points) report.add(check_mean(ens, t));
  for (auto s : config.covariance_points) {
    for (auto t : config.covariance_points) report.add(check_covariance(ens, s, t));
  }
  for (auto t : config.marginal_points) report.add(check_marginal_normal(ens, t));
  for (const auto& p : config.interval_pairs) {
    report.add(check_increment_independence(ens, p.r1, p.r2, p.r3, p.r4));
    for (auto [a, b] : {std::pair{p.r1, p.r2}, std::pair{p.r3, p.r4}}) {
      report.add(check_increment_variance(ens, a, b));
      report.add(check_stationarity(ens, a, b));
    }
  }
  return report;
}

StatReport run_modulus_suite(const ModulusSuiteConfig& config, const RunOptions& options) {
  ModulusTailConfig tc;
  tc.level = config.level;
  tc.measurement_level = config.measurement_level;
  tc.horizon = config.horizon;
  tc.paths = config.paths;
  tc.base_seed = config.base_seed;
  tc.alphas = config.alphas;
  const ModulusTailEstimate est = estimate_modulus_tails(tc, options);
  const std::uint32_t n = config.level;
  const std::string seeds = seed_range(config.base_seed, config.paths);
  const auto windows = modulus_window_count(n);

  StatReport report;
  report.suite = "verify-modulus";
  report.config["level"] = n;
  report.config["measurement_level"] = config.measurement_level;
  report.config["horizon"] = est.config.horizon;
  report.config["paths"] = config.paths;
  report.config["base_seed"] = config.base_seed;
  report.config["seeds"] = seeds;
  report.config["generator"] = est.generator_id;
  report.config["alphas"] = config.alphas;
  report.config["windows"] = windows;
  report.config["band_sigmas"] = kBandSigmas;
  report.config["table_max"] = config.table_max;
  report.config["series_max"] = config.series_max;
  report.config["note"] = "suprema are maxima over the measurement grid; true values are >= reported";

  const double npaths = static_cast<double>(config.paths);
  auto binomial_se = [&](double p) { return std::sqrt(p * (1.0 - p) / npaths); };

  for (std::size_t a = 0; a < config.alphas.size(); ++a) {
    const double alpha = config.alphas[a];
    const double bound = interval_tail_bound(n, alpha);
    double union_sum = 0.0;
    for (std::size_t k = 0; k < windows; ++k) {
      const double p = est.interval_probability(a, k);
      union_sum += p;
      StatRecord r;
      r.check = "interval-tail";
      r.quantity = "P(M_{" + std::to_string(k) + "," + std::to_string(n) + "} >= 3*" + alpha_text(alpha) + ")";
      r.target = bound;
      r.estimate = p;
      r.stderr_ = binomial_se(p);
      r.band = kBandSigmas * r.stderr_;
      r.pass = r.estimate <= r.target + r.band;
      r.tolerance = "estimate <= 36 alpha^-4 2^-2n + 4 binomial standard errors";
      r.seeds = seeds;
      report.add(std::move(r));
    }

    const double p_max = est.aggregate_probability(a);
    StatRecord u;
    u.check = "union-bound";
    u.quantity = "P(M_" + std::to_string(n) + " >= 3*" + alpha_text(alpha) + ") <= sum_k P(M_{k,n} >= 3*alpha)";
    u.target = union_sum;
    u.estimate = p_max;
    u.stderr_ = kNaN;
    u.band = 0.0;
    u.pass = p_max <= union_sum;
    u.tolerance = "exact";
    u.seeds = seeds;
    report.add(std::move(u));

    StatRecord g;
    g.check = "aggregate-tail";
    g.quantity = "P(M_" + std::to_string(n) + " >= 3*" + alpha_text(alpha) + ")";
    g.target = static_cast<double>(windows) * bound;
    g.estimate = p_max;
    g.stderr_ = binomial_se(p_max);
    g.band = kBandSigmas * g.stderr_;
    g.pass = g.estimate <= g.target + g.band;
    g.tolerance = "estimate <= windows * 36 alpha^-4 2^-2n + 4 binomial standard errors";
    g.seeds = seeds;
    report.add(std::move(g));
  }

  if (n >= 1) {
    const double p = static_cast<double>(est.inverse_level_hits) / npaths;
    StatRecord r;
    r.check = "inverse-level-tail";
    r.quantity = "P(M_" + std::to_string(n) + " >= 1/" + std::to_string(n) + ")";
    r.target = modulus_tail_term(n);
    r.estimate = p;
    r.stderr_ = binomial_se(p);
    r.band = kBandSigmas * r.stderr_;
    r.pass = r.estimate <= r.target + r.band;
    r.tolerance = "estimate <= 2916 (n+1) n^4 2^-n + 4 binomial standard errors";
    r.seeds = seeds;
    report.add(std::move(r));
  }

  const TailSeriesSummary series = summarize_tail_series(config.series_max);
  StatRecord s;
  s.check = "tail-series";
  s.quantity = "sum_{n=1}^{" + std::to_string(config.series_max) + "} 2916 (n+1) n^4 2^-n";
  s.target = kNaN;
  s.estimate = series.partial_sums.back();
  s.stderr_ = kNaN;
  s.band = series.remainder_bound;
  s.pass = series.converged;
  s.tolerance = "geometric remainder bound <= 1e-12 * partial sum";
  s.extra["last_ratio"] = series.last_ratio;
  s.extra["table"] = bound_table(1, config.table_max, config.alphas);
  report.add(std::move(s));

  // First n after which the terms decrease through the end of the table.
  std::size_t first_decreasing = series.terms.size();
  while (first_decreasing > 1 && series.terms[first_decreasing - 1] < series.terms[first_decreasing - 2]) {
    --first_decreasing;
  }
  StatRecord d;
  d.check = "tail-term-decay";
  d.quantity = "terms strictly decreasing from n onward";
  d.target = kNaN;
  d.estimate = static_cast<double>(first_decreasing);
  d.stderr_ = kNaN;
  d.band = kNaN;
  d.pass = first_decreasing < series.terms.size();
  d.tolerance = "exact";
  report.add(std::move(d));

  return report;
}

std::vector<double> EtemadiSuiteConfig::default_alphas() {
  std::vector<double> alphas;
  for (std::size_t j = 0; j < defaults::kAlphaGridSize; ++j) alphas.push_back(defaults::kAlphaGridStep * j);
  return alphas;
}

StatReport run_etemadi_suite(const EtemadiSuiteConfig& config, unsigned workers) {
  const auto& alphas = config.alphas;
  if (alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  const auto rademacher = StepDistribution::rademacher();
  for (auto n : config.rademacher_steps) {
    if (n == 0 || n > 23) throw std::invalid_argument("exact Rademacher suites need 1 <= n <= 23 (2^n <= 10^7)");
  }
  if (!config.gaussian_steps.empty() && config.trials < kMinTrials) {
    throw std::invalid_argument("Monte Carlo needs at least 1000 trials");
  }

  StatReport report;
  report.suite = "verify-etemadi";
  report.config["alphas"] = alphas;
  report.config["rademacher_steps"] = config.rademacher_steps;
  report.config["gaussian_steps"] = config.gaussian_steps;
  report.config["trials"] = config.trials;
  report.config["seed"] = config.seed;
  report.config["generator"] = "philox4x32-10/box-muller";
  report.config["band_sigmas"] = 4.0;

  for (auto n : config.rademacher_steps) {
    const auto results = etemadi_exact(rademacher, n, alphas);
    for (const auto& res : results) {
      StatRecord r;
      r.check = "etemadi-exact";
      r.quantity = "rademacher n=" + std::to_string(n) + " alpha=" + alpha_text(res.alpha);
      r.target = 3.0 * res.rhs_factor;
      r.estimate = res.lhs;
      r.stderr_ = 0.0;
      r.band = 0.0;
      r.pass = res.holds() && std::abs(res.total_mass - 1.0) <= 1e-12;
      r.tolerance = "lhs <= 3 * rhs_factor, no slack";
      r.extra["rhs_factor"] = res.rhs_factor;
      r.extra["total_mass"] = res.total_mass;
      report.add(std::move(r));
    }
  }

  const auto normal = StepDistribution::normal(1.0);
  for (auto n : config.gaussian_steps) {
    const auto results = etemadi_mc(normal, n, alphas, config.trials, config.seed, workers);
    for (const auto& res : results) {
      StatRecord r;
      r.check = "etemadi-mc";
      r.quantity = "normal n=" + std::to_string(n) + " alpha=" + alpha_text(res.alpha);
      r.target = 3.0 * res.rhs_factor;
      r.estimate = res.lhs;
      r.stderr_ = res.combined_stderr();
      r.band = 4.0 * r.stderr_;
      r.pass = res.holds();
      r.tolerance = "lhs <= 3 * rhs_factor + 4 combined standard errors";
      r.seeds = "seed " + std::to_string(config.seed) + ", trials 0.." + std::to_string(config.trials - 1);
      r.extra["rhs_factor"] = res.rhs_factor;
      r.extra["lhs_stderr"] = res.lhs_stderr;
      r.extra["rhs_stderr"] = res.rhs_stderr;
      report.add(std::move(r));
    }
  }
  return report;
}

Json bound_table(std::uint32_t from, std::uint32_t to, const std::vector<double>& alphas) {
  if (from == 0 || to < from) throw std::invalid_argument("bound table needs 1 <= from <= to");
  Json rows = Json::array();
  double running = 0.0;
  for (std::uint32_t n = 1; n <= to; ++n) {
    const double term = modulus_tail_term(n);
    running += term;
    if (n < from) continue;
    Json row;
    row["n"] = n;
    Json bounds = Json::object();
    for (double a : alphas) bounds[alpha_text(a)] = interval_tail_bound(n, a);
    row["interval_tail_bound"] = std::move(bounds);
    row["modulus_tail_term"] = term;
    row["partial_sum"] = running;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace brownian
