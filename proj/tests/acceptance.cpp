// Acceptance suite: one PASS/FAIL line per criterion. Every Monte Carlo run
// uses base seed 0.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brownian/checks.hpp"
#include "brownian/etemadi.hpp"
#include "brownian/modulus.hpp"
#include "brownian/path.hpp"
#include "brownian/suites.hpp"
#include "cli_runner.hpp"
#include "oracles.hpp"

using namespace brownian;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// Records of one check kind; fails on the first record that does not pass.
Outcome tally(const StatReport& report, const std::vector<std::string>& checks, std::size_t expected) {
  std::size_t seen = 0, passed = 0;
  std::string failures;
  for (const auto& r : report.records) {
    if (std::find(checks.begin(), checks.end(), r.check) == checks.end()) continue;
    ++seen;
    if (r.pass) {
      ++passed;
    } else {
      failures += " [" + r.check + " " + r.quantity + " estimate=" + fmt(r.estimate) + " band=" + fmt(r.band);
      if (r.extra.contains("p_value")) failures += " p=" + fmt(r.extra["p_value"].get<double>());
      failures += "]";
    }
  }
  const bool ok = seen == expected && passed == seen;
  return {ok, std::to_string(passed) + "/" + std::to_string(seen) + " pass" +
                  (seen != expected ? " (expected " + std::to_string(expected) + " records)" : "") + failures};
}

StatReport law_report;
double law_seconds = 0.0;

Outcome covariance_law() {
  const auto start = Clock::now();
  LawSuiteConfig config = LawSuiteConfig::registered();
  config.base_seed = 0;
  law_report = run_law_suite(config, RunOptions{default_generator(), 0});
  law_seconds = seconds_since(start);
  Outcome o = tally(law_report, {"covariance"}, 9);
  o.pass = o.pass && law_seconds < 60.0;
  o.detail += ", N=" + std::to_string(config.paths) + ", " + fmt(law_seconds) + " s";
  return o;
}

Outcome marginal_law() {
  LawSuiteConfig config = LawSuiteConfig::registered();
  config.paths = 10'000;
  config.base_seed = 0;
  const StatReport report = run_law_suite(config, RunOptions{default_generator(), 0});
  Outcome o = tally(report, {"ks-marginal"}, 4);
  o.detail += ", N=10000";
  return o;
}

Outcome increments() {
  Outcome o = tally(law_report, {"increment-independence", "ks-stationarity"}, 6 + 12);
  o.detail += ", shared N=100000 ensemble";
  return o;
}

Outcome refinement_consistency() {
  std::size_t compared = 0, mismatched = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const NoiseSource src(seed);
    const DyadicPath fine = construct(2, 10, src);
    for (std::uint32_t m = 0; m < 10; ++m) {
      const DyadicPath direct = construct(2, m, src);
      const DyadicPath down = fine.downsample(m);
      ++compared;
      const bool same = direct.size() == down.size() &&
                        std::memcmp(direct.values().data(), down.values().data(), direct.size() * sizeof(double)) == 0;
      if (!same) ++mismatched;
    }
  }
  return {mismatched == 0, std::to_string(compared - mismatched) + "/" + std::to_string(compared) +
                               " (seed, level) pairs bit-identical"};
}

Outcome etemadi() {
  const auto alphas = EtemadiSuiteConfig::default_alphas();
  const auto dist = StepDistribution::rademacher();
  std::size_t cases = 0, held = 0;
  for (std::uint32_t n = 1; n <= 12; ++n) {
    for (const auto& r : etemadi_exact(dist, n, alphas)) {
      ++cases;
      if (r.lhs <= 3.0 * r.rhs_factor) ++held;
    }
  }
  // Monte Carlo vs enumeration at n = 10; standard errors at the exact probabilities.
  constexpr std::uint64_t kTrials = 1'000'000;
  const auto exact = etemadi_exact(dist, 10, alphas);
  const auto mc = etemadi_mc(dist, 10, alphas, kTrials, 0, 0);
  std::size_t agree = 0, compared = 0;
  double worst = 0.0;
  auto compare = [&](double estimate, double p) {
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(kTrials));
    const double gap = std::abs(estimate - p);
    ++compared;
    if (gap <= 4.0 * se) ++agree;
    if (se > 0) worst = std::max(worst, gap / se);
    else if (gap > 0) worst = HUGE_VAL;
  };
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    compare(mc[i].lhs, exact[i].lhs);
    compare(mc[i].rhs_factor, exact[i].rhs_factor);
  }
  const bool ok = held == cases && agree == compared;
  return {ok, "exact " + std::to_string(held) + "/" + std::to_string(cases) + " hold with no slack; MC " +
                  std::to_string(agree) + "/" + std::to_string(compared) + " within 4 SE (max |z| " + fmt(worst) +
                  ", 10^6 trials)"};
}

Outcome modulus_bounds() {
  ModulusTailConfig config;
  config.level = 2;
  config.measurement_level = 10;
  config.paths = 10'000;
  config.base_seed = 0;
  config.alphas = {0.5, 0.75, 1.0};
  const auto est = estimate_modulus_tails(config, RunOptions{default_generator(), 0});
  std::size_t cases = 0, below = 0;
  double max_p = 0.0;
  for (std::size_t a = 0; a < config.alphas.size(); ++a) {
    const double bound = interval_tail_bound(config.level, config.alphas[a]);
    for (std::size_t k = 0; k < est.interval_hits[a].size(); ++k) {
      ++cases;
      const double p = est.interval_probability(a, k);
      max_p = std::max(max_p, p);
      if (p <= bound) ++below;
    }
  }
  const TailSeriesSummary series = summarize_tail_series(200);
  const bool ok = below == cases && series.converged;
  return {ok, std::to_string(below) + "/" + std::to_string(cases) + " interval tails below bound (max " + fmt(max_p) +
                  "); series n<=200 " + (series.converged ? "converged" : "NOT converged") + ", sum " +
                  fmt(series.partial_sums.back()) + ", remainder <= " + fmt(series.remainder_bound)};
}

Outcome modulus_oracle() {
  std::mt19937_64 rng(0);
  std::size_t agree = 0;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t seed = rng();
    const auto n = static_cast<std::uint32_t>(rng() % 5);
    const auto m = n + static_cast<std::uint32_t>(rng() % 5);
    const DyadicPath path = construct(modulus_min_horizon(n) + static_cast<std::uint32_t>(rng() % 2), m, NoiseSource(seed));
    const ModulusStat stat = compute_modulus(path, n);
    const auto oracle = testing::brute_force_modulus(path, n);
    if (stat.per_interval == oracle && stat.aggregate == *std::max_element(oracle.begin(), oracle.end())) ++agree;
  }
  return {agree == 100, std::to_string(agree) + "/100 random cases match exactly"};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs{
      {"generate", "--seed", "42", "--horizon", "2", "--level", "10"},
      {"verify-law", "--seed", "0", "--paths", "4000", "--format", "json"},
      {"verify-law", "--seed", "0", "--paths", "4000", "--format", "csv"},
      {"verify-modulus", "--seed", "0", "--paths", "3000", "--format", "json"},
      {"verify-etemadi", "--seed", "0", "--paths", "20000", "--rademacher-steps", "1,5,10", "--format", "json"},
      {"bounds", "--from", "1", "--to", "30"},
  };
  std::size_t stable = 0;
  std::string failures;
  for (const auto& args : runs) {
    const auto reference = testing::run_cli(args);
    bool same = true;
    for (const char* workers : {"1", "1", "2", "4"}) {
      auto with = args;
      if (args.front() != "bounds") with.insert(with.end(), {"--workers", workers});
      const auto r = testing::run_cli(with);
      same = same && r.code == reference.code && r.out == reference.out;
    }
    if (same) ++stable;
    else failures += " [" + args.front() + "]";
  }
  return {stable == runs.size(), std::to_string(stable) + "/" + std::to_string(runs.size()) +
                                     " commands byte-identical across reruns and 1/2/4 workers" + failures};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"covariance law", covariance_law},
      {"marginal law", marginal_law},
      {"increment independence and stationarity", increments},
      {"refinement consistency", refinement_consistency},
      {"Etemadi inequality", etemadi},
      {"modulus bound chain", modulus_bounds},
      {"modulus oracle equivalence", modulus_oracle},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
