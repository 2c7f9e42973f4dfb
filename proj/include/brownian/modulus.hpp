#pragma once

#include <cstdint>
#include <vector>

#include "brownian/ensemble.hpp"
#include "brownian/path.hpp"

namespace brownian {

/// Oscillation of one path over the overlapping windows I_{k,n} = [k/2^n, (k+2)/2^n].
///
/// The suprema are maxima over the grid of the path the statistic was
/// measured on, so every entry is a lower bound for the supremum over all
/// dyadics in the window; it can only grow as measurement_level rises.
struct ModulusStat {
  std::uint32_t level = 0;              // n
  std::uint32_t measurement_level = 0;  // m >= n
  std::vector<double> per_interval;     // M_{k,n}, k = 0 .. (n+1) 2^n
  double aggregate = 0.0;               // M_n
};

/// Number of windows k = 0 .. (n+1) 2^n.
std::uint64_t modulus_window_count(std::uint32_t n);

/// Smallest integer horizon containing every window at level n:
/// ceil(n + 1 + 2^(1-n)), i.e. 3 for n = 0 and n + 2 otherwise.
std::uint32_t modulus_min_horizon(std::uint32_t n);

ModulusStat compute_modulus(const DyadicPath& path, std::uint32_t n);

/// 36 alpha^-4 2^(-2n): bound on P(M_{k,n} >= 3 alpha).
double interval_tail_bound(std::uint32_t n, double alpha);

/// 2916 (n+1) n^4 2^-n: bound on P(M_n >= 1/n), n >= 1.
double modulus_tail_term(std::uint32_t n);

struct TailSeriesSummary {
  std::vector<double> terms;         // index i holds the term for n = i + 1
  std::vector<double> partial_sums;
  double last_ratio = 0.0;           // term(n_max) / term(n_max - 1)
  bool ratios_decreasing_at_end = false;
  double remainder_bound = 0.0;      // geometric bound on the sum beyond n_max
  bool converged = false;
};

/// Partial sums of modulus_tail_term for n = 1 .. n_max. Once the consecutive
/// ratio is below one and decreasing, the remainder is dominated by a
/// geometric series; the summary reports convergence when that remainder is
/// below `relative_tolerance` times the partial sum.
TailSeriesSummary summarize_tail_series(std::uint32_t n_max, double relative_tolerance = 1e-12);

struct ModulusTailConfig {
  std::uint32_t level = 2;              // n
  std::uint32_t measurement_level = 10; // m
  std::uint32_t horizon = 0;            // 0 = modulus_min_horizon(n)
  std::uint64_t paths = 10'000;
  std::uint64_t base_seed = 0;
  std::vector<double> alphas;
};

/// Hit counts of {M_{k,n} >= 3 alpha} and {M_n >= 3 alpha} (plus {M_n >= 1/n}) over an ensemble.
struct ModulusTailEstimate {
  ModulusTailConfig config;
  std::string generator_id;
  std::uint64_t paths = 0;
  std::vector<std::vector<std::uint64_t>> interval_hits;  // [alpha][k]
  std::vector<std::uint64_t> aggregate_hits;              // [alpha]
  std::uint64_t inverse_level_hits = 0;                   // M_n >= 1/n, n >= 1
  double max_aggregate = 0.0;

  double interval_probability(std::size_t alpha, std::size_t k) const;
  double aggregate_probability(std::size_t alpha) const;
};

ModulusTailEstimate estimate_modulus_tails(const ModulusTailConfig& config, const RunOptions& options = {});

}  // namespace brownian
