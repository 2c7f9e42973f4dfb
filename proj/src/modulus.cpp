#include "brownian/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brownian/parallel.hpp"

namespace brownian {

std::uint64_t modulus_window_count(std::uint32_t n) {
  if (n > kMaxLevel) throw std::length_error("level exceeds the dense-storage limit");
  return ((static_cast<std::uint64_t>(n) + 1) << n) + 1;
}

std::uint32_t modulus_min_horizon(std::uint32_t n) { return n == 0 ? 3 : n + 2; }

ModulusStat compute_modulus(const DyadicPath& path, std::uint32_t n) {
  if (path.level() < n) throw std::invalid_argument("path level is below the modulus level");
  const std::uint32_t required = modulus_min_horizon(n);
  if (path.horizon() < required) {
    throw std::invalid_argument("modulus at level " + std::to_string(n) + " needs horizon >= " +
                                std::to_string(required));
  }
  const std::size_t stride = std::size_t{1} << (path.level() - n);
  const std::size_t windows = modulus_window_count(n);
  const auto values = path.values();

  ModulusStat stat;
  stat.level = n;
  stat.measurement_level = path.level();
  stat.per_interval.resize(windows);
  for (std::size_t k = 0; k < windows; ++k) {
    const std::size_t begin = k * stride;
    const std::size_t end = begin + 2 * stride;
    const double anchor = values[begin];
    double sup = 0.0;
    for (std::size_t j = begin + 1; j <= end; ++j) sup = std::max(sup, std::abs(values[j] - anchor));
    stat.per_interval[k] = sup;
  }
  stat.aggregate = *std::max_element(stat.per_interval.begin(), stat.per_interval.end());
  return stat;
}

double interval_tail_bound(std::uint32_t n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return 36.0 * std::pow(alpha, -4.0) * std::ldexp(1.0, -2 * static_cast<int>(n));
}

double modulus_tail_term(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("modulus tail term is defined for n >= 1");
  const double nd = static_cast<double>(n);
  return 2916.0 * (nd + 1.0) * std::pow(nd, 4.0) * std::ldexp(1.0, -static_cast<int>(n));
}

TailSeriesSummary summarize_tail_series(std::uint32_t n_max, double relative_tolerance) {
  if (n_max < 3) throw std::invalid_argument("series summary needs n_max >= 3");
  TailSeriesSummary s;
  double sum = 0.0;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const double term = modulus_tail_term(n);
    sum += term;
    s.terms.push_back(term);
    s.partial_sums.push_back(sum);
  }
  const std::size_t last = s.terms.size() - 1;
  s.last_ratio = s.terms[last] / s.terms[last - 1];
  const double previous_ratio = s.terms[last - 1] / s.terms[last - 2];
  s.ratios_decreasing_at_end = s.last_ratio < previous_ratio;
  if (s.last_ratio < 1.0 && s.ratios_decreasing_at_end) {
    s.remainder_bound = s.terms[last] * s.last_ratio / (1.0 - s.last_ratio);
    s.converged = s.remainder_bound <= relative_tolerance * sum;
  } else {
    s.remainder_bound = std::numeric_limits<double>::infinity();
  }
  return s;
}

double ModulusTailEstimate::interval_probability(std::size_t alpha, std::size_t k) const {
  return static_cast<double>(interval_hits.at(alpha).at(k)) / static_cast<double>(paths);
}

double ModulusTailEstimate::aggregate_probability(std::size_t alpha) const {
  return static_cast<double>(aggregate_hits.at(alpha)) / static_cast<double>(paths);
}

ModulusTailEstimate estimate_modulus_tails(const ModulusTailConfig& config, const RunOptions& options) {
  if (config.alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  for (double a : config.alphas) {
    if (!(a > 0.0)) throw std::invalid_argument("alpha must be positive");
  }
  if (config.paths == 0) throw std::invalid_argument("need at least one path");
  if (config.measurement_level < config.level) throw std::invalid_argument("measurement level is below the modulus level");
  const std::uint32_t required = modulus_min_horizon(config.level);
  const std::uint32_t horizon = config.horizon == 0 ? required : config.horizon;
  if (horizon < required) {
    throw std::invalid_argument("modulus at level " + std::to_string(config.level) + " needs horizon >= " +
                                std::to_string(required));
  }
  if (config.base_seed > std::numeric_limits<std::uint64_t>::max() - (config.paths - 1)) {
    throw std::overflow_error("seed range overflows 64 bits");
  }

  const std::size_t windows = modulus_window_count(config.level);
  const std::size_t alphas = config.alphas.size();
  const double inverse_level = config.level == 0 ? std::numeric_limits<double>::infinity() : 1.0 / config.level;

  struct Counts {
    std::vector<std::uint64_t> interval;  // alpha-major
    std::vector<std::uint64_t> aggregate;
    std::uint64_t inverse = 0;
    double max_aggregate = 0.0;
  };
  const std::size_t blocks = (config.paths + kBlockSize - 1) / kBlockSize;
  std::vector<Counts> results(blocks);

  for_each_block(blocks, options.workers, [&](std::size_t b) {
    Counts& c = results[b];
    c.interval.assign(alphas * windows, 0);
    c.aggregate.assign(alphas, 0);
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min<std::uint64_t>(config.paths, begin + kBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      const NoiseSource src(config.base_seed + i, options.generator);
      const ModulusStat stat = compute_modulus(construct(horizon, config.measurement_level, src), config.level);
      for (std::size_t a = 0; a < alphas; ++a) {
        const double threshold = 3.0 * config.alphas[a];
        for (std::size_t k = 0; k < windows; ++k) {
          if (stat.per_interval[k] >= threshold) ++c.interval[a * windows + k];
        }
        if (stat.aggregate >= threshold) ++c.aggregate[a];
      }
      if (stat.aggregate >= inverse_level) ++c.inverse;
      c.max_aggregate = std::max(c.max_aggregate, stat.aggregate);
    }
  });

  ModulusTailEstimate est;
  est.config = config;
  est.config.horizon = horizon;
  est.generator_id = options.generator->id();
  est.paths = config.paths;
  est.interval_hits.assign(alphas, std::vector<std::uint64_t>(windows, 0));
  est.aggregate_hits.assign(alphas, 0);
  for (const auto& c : results) {
    for (std::size_t a = 0; a < alphas; ++a) {
      for (std::size_t k = 0; k < windows; ++k) est.interval_hits[a][k] += c.interval[a * windows + k];
      est.aggregate_hits[a] += c.aggregate[a];
    }
    est.inverse_level_hits += c.inverse;
    est.max_aggregate = std::max(est.max_aggregate, c.max_aggregate);
  }
  return est;
}

}  // namespace brownian
