#include "brownian/etemadi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "brownian/parallel.hpp"

namespace brownian {

namespace {

constexpr std::uint32_t kEtemadiStream = 1;

void require_alphas(std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("alpha must be finite and non-negative");
  }
}

double binomial_stderr(double p, std::uint64_t trials) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

/// Sorted copy of the grid plus the permutation back to caller order.
struct SortedGrid {
  std::vector<double> values;
  std::vector<std::size_t> order;  // order[j] = caller index of values[j]

  explicit SortedGrid(std::span<const double> alphas, double factor) : order(alphas.size()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return alphas[a] < alphas[b]; });
    for (std::size_t i : order) values.push_back(factor * alphas[i]);
  }

  /// Number of grid thresholds t with t <= v.
  std::size_t reached(double v) const {
    return static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), v) - values.begin());
  }
};

}  // namespace

StepDistribution::StepDistribution(std::variant<Finite, Normal> law) : law_(std::move(law)) {}

StepDistribution StepDistribution::finite(std::vector<double> values, std::vector<double> probabilities) {
  if (values.empty() || values.size() != probabilities.size()) {
    throw std::invalid_argument("finite support needs matching, non-empty value and probability lists");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw std::invalid_argument("support values must be finite");
    if (!(probabilities[i] >= 0.0)) throw std::invalid_argument("probabilities must be non-negative");
    total += probabilities[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
  StepDistribution d(Finite{std::move(values), std::move(probabilities)});
  const auto& p = std::get<Finite>(d.law_).probabilities;
  d.cumulative_.resize(p.size());
  std::partial_sum(p.begin(), p.end(), d.cumulative_.begin());
  return d;
}

StepDistribution StepDistribution::normal(double sd) {
  if (!(sd > 0.0) || !std::isfinite(sd)) throw std::invalid_argument("standard deviation must be positive");
  return StepDistribution(Normal{sd});
}

StepDistribution StepDistribution::rademacher() { return finite({-1.0, 1.0}, {0.5, 0.5}); }

std::string StepDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* f = std::get_if<Finite>(&law_)) {
    if (f->values == std::vector<double>{-1.0, 1.0} && f->probabilities == std::vector<double>{0.5, 0.5}) {
      return "rademacher";
    }
    os << "finite{";
    for (std::size_t i = 0; i < f->values.size(); ++i) {
      if (i) os << ",";
      os << f->values[i] << ":" << f->probabilities[i];
    }
    os << "}";
  } else {
    os << "normal(sd=" << std::get<Normal>(law_).sd << ")";
  }
  return os.str();
}

double StepDistribution::sample(const UniformPair& u) const {
  if (const auto* f = std::get_if<Finite>(&law_)) {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u.first);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), f->values.size() - 1);
    return f->values[i];
  }
  return std::get<Normal>(law_).sd * box_muller(u);
}

double EtemadiResult::combined_stderr() const {
  return std::sqrt(lhs_stderr * lhs_stderr + 9.0 * rhs_stderr * rhs_stderr);
}

bool EtemadiResult::holds() const {
  if (method == EtemadiMethod::exact) return lhs <= 3.0 * rhs_factor;
  return lhs <= 3.0 * rhs_factor + 4.0 * combined_stderr();
}

std::vector<EtemadiResult> etemadi_exact(const StepDistribution& dist, std::uint32_t steps,
                                         std::span<const double> alphas) {
  if (!dist.is_finite()) throw std::invalid_argument("exact enumeration needs a finite-support distribution");
  if (steps == 0) throw std::invalid_argument("need at least one step");
  require_alphas(alphas);
  const auto& support = dist.support();
  const std::size_t s = support.values.size();
  std::uint64_t outcomes = 1;
  for (std::uint32_t i = 0; i < steps; ++i) {
    outcomes *= s;
    if (outcomes > kMaxEnumeration) throw std::invalid_argument("enumeration exceeds 10^7 outcome sequences");
  }

  const SortedGrid tail_grid(alphas, 1.0);
  const SortedGrid max_grid(alphas, 3.0);
  const std::size_t m = alphas.size();
  // Probability mass reaching exactly j thresholds, per step; suffix sums give tails.
  std::vector<double> step_mass((steps + 1) * (m + 1), 0.0);
  std::vector<double> max_mass(m + 1, 0.0);
  double total = 0.0;

  struct Frame {
    double sum;
    double running_max;
    double probability;
  };
  // Depth-first over step sequences; the outcome index at each depth is an odometer digit.
  std::vector<std::size_t> digit(steps, 0);
  std::vector<Frame> stack(steps + 1);
  stack[0] = {0.0, 0.0, 1.0};
  std::uint32_t depth = 0;
  while (true) {
    if (depth == steps) {
      const Frame& leaf = stack[depth];
      max_mass[max_grid.reached(leaf.running_max)] += leaf.probability;
      total += leaf.probability;
      // advance odometer
      while (depth > 0 && digit[depth - 1] + 1 == s) digit[--depth] = 0;
      if (depth == 0) break;
      ++digit[depth - 1];
      --depth;
    }
    const Frame& parent = stack[depth];
    const std::size_t i = digit[depth];
    Frame& child = stack[depth + 1];
    child.sum = parent.sum + support.values[i];
    child.running_max = std::max(parent.running_max, std::abs(child.sum));
    child.probability = parent.probability * support.probabilities[i];
    step_mass[(depth + 1) * (m + 1) + tail_grid.reached(std::abs(child.sum))] += child.probability;
    ++depth;
  }

  std::vector<EtemadiResult> results(m);
  for (std::size_t j = 0; j < m; ++j) {
    // thresholds reached >= j + 1 means the (j)-th sorted threshold is met
    EtemadiResult& r = results[tail_grid.order[j]];
    r.alpha = alphas[tail_grid.order[j]];
    r.steps = steps;
    r.method = EtemadiMethod::exact;
    r.total_mass = total;
    r.step_tails.assign(steps, 0.0);
    for (std::uint32_t k = 1; k <= steps; ++k) {
      double tail = 0.0;
      for (std::size_t c = j + 1; c <= m; ++c) tail += step_mass[k * (m + 1) + c];
      r.step_tails[k - 1] = tail;
    }
    r.rhs_factor = *std::max_element(r.step_tails.begin(), r.step_tails.end());
  }
  for (std::size_t j = 0; j < m; ++j) {
    double tail = 0.0;
    for (std::size_t c = j + 1; c <= m; ++c) tail += max_mass[c];
    results[max_grid.order[j]].lhs = tail;
  }
  return results;
}

EtemadiResult etemadi_exact(const StepDistribution& dist, std::uint32_t steps, double alpha) {
  return etemadi_exact(dist, steps, std::span<const double>(&alpha, 1)).front();
}

std::vector<EtemadiResult> etemadi_mc(const StepDistribution& dist, std::uint32_t steps,
                                      std::span<const double> alphas, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers) {
  if (trials < kMinTrials) throw std::invalid_argument("Monte Carlo needs at least 1000 trials");
  if (steps == 0) throw std::invalid_argument("need at least one step");
  require_alphas(alphas);

  const SortedGrid tail_grid(alphas, 1.0);
  const SortedGrid max_grid(alphas, 3.0);
  const std::size_t m = alphas.size();

  struct Counts {
    std::vector<std::uint64_t> step;  // (steps + 1) x (m + 1) histogram of thresholds reached
    std::vector<std::uint64_t> max;
  };
  const std::size_t blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<Counts> results(blocks);
  for_each_block(blocks, workers, [&](std::size_t b) {
    Counts& c = results[b];
    c.step.assign((steps + 1) * (m + 1), 0);
    c.max.assign(m + 1, 0);
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kBlockSize);
    for (std::uint64_t t = begin; t < end; ++t) {
      double sum = 0.0;
      double running_max = 0.0;
      for (std::uint32_t k = 1; k <= steps; ++k) {
        sum += dist.sample(philox_uniforms(seed, t, k, kEtemadiStream));
        running_max = std::max(running_max, std::abs(sum));
        ++c.step[k * (m + 1) + tail_grid.reached(std::abs(sum))];
      }
      ++c.max[max_grid.reached(running_max)];
    }
  });

  std::vector<std::uint64_t> step_hist((steps + 1) * (m + 1), 0);
  std::vector<std::uint64_t> max_hist(m + 1, 0);
  for (const auto& c : results) {
    for (std::size_t i = 0; i < step_hist.size(); ++i) step_hist[i] += c.step[i];
    for (std::size_t i = 0; i < max_hist.size(); ++i) max_hist[i] += c.max[i];
  }

  const double n = static_cast<double>(trials);
  std::vector<EtemadiResult> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    EtemadiResult& r = out[tail_grid.order[j]];
    r.alpha = alphas[tail_grid.order[j]];
    r.steps = steps;
    r.method = EtemadiMethod::monte_carlo;
    r.trials = trials;
    r.step_tails.assign(steps, 0.0);
    std::size_t argmax = 0;
    for (std::uint32_t k = 1; k <= steps; ++k) {
      std::uint64_t hits = 0;
      for (std::size_t c = j + 1; c <= m; ++c) hits += step_hist[k * (m + 1) + c];
      r.step_tails[k - 1] = static_cast<double>(hits) / n;
      if (r.step_tails[k - 1] > r.step_tails[argmax]) argmax = k - 1;
    }
    r.rhs_factor = r.step_tails[argmax];
    r.rhs_stderr = binomial_stderr(r.rhs_factor, trials);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t hits = 0;
    for (std::size_t c = j + 1; c <= m; ++c) hits += max_hist[c];
    EtemadiResult& r = out[max_grid.order[j]];
    r.lhs = static_cast<double>(hits) / n;
    r.lhs_stderr = binomial_stderr(r.lhs, trials);
  }
  return out;
}

EtemadiResult etemadi_mc(const StepDistribution& dist, std::uint32_t steps, double alpha, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers) {
  return etemadi_mc(dist, steps, std::span<const double>(&alpha, 1), trials, seed, workers).front();
}

double gaussian_fourth_moment_bound(double alpha, double delta) {
  if (!(alpha > 0.0) || !(delta > 0.0)) throw std::invalid_argument("alpha and delta must be positive");
  return 9.0 * std::pow(alpha, -4.0) * delta * delta;
}

double markov_normal_tail_bound(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("threshold must be positive");
  return 3.0 / std::pow(c, 4.0);
}

double normal_two_sided_tail(double c) { return std::erfc(c / std::numbers::sqrt2); }

}  // namespace brownian
