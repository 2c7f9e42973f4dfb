#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "brownian/philox.hpp"

namespace brownian {

/// Law of a single step X_i: either finitely supported or N(0, sd^2).
class StepDistribution {
 public:
  struct Finite {
    std::vector<double> values;
    std::vector<double> probabilities;
  };
  struct Normal {
    double sd;
  };

  /// Probabilities must be non-negative and sum to 1 within 1e-12.
  static StepDistribution finite(std::vector<double> values, std::vector<double> probabilities);
  static StepDistribution normal(double sd);
  /// +1 and -1 with probability 1/2 each.
  static StepDistribution rademacher();

  bool is_finite() const { return std::holds_alternative<Finite>(law_); }
  const Finite& support() const { return std::get<Finite>(law_); }
  std::string describe() const;

  /// Inverse-CDF draw for finite supports, Box-Muller for the normal.
  double sample(const UniformPair& u) const;

 private:
  explicit StepDistribution(std::variant<Finite, Normal> law);

  std::variant<Finite, Normal> law_;
  std::vector<double> cumulative_;
};

enum class EtemadiMethod { exact, monte_carlo };

/// Both sides of P(max_k |S_k| >= 3 alpha) <= 3 max_k P(|S_k| >= alpha).
struct EtemadiResult {
  double alpha = 0.0;
  std::uint32_t steps = 0;
  double lhs = 0.0;                  // P(max_{k<=n} |S_k| >= 3 alpha)
  double rhs_factor = 0.0;           // max_k P(|S_k| >= alpha)
  std::vector<double> step_tails;    // P(|S_k| >= alpha), k = 1..n
  EtemadiMethod method = EtemadiMethod::exact;
  std::uint64_t trials = 0;          // Monte Carlo only
  double lhs_stderr = 0.0;
  double rhs_stderr = 0.0;
  double total_mass = 1.0;           // exact only: probability of all enumerated outcomes

  double combined_stderr() const;
  /// Exact: lhs <= 3 rhs_factor with no slack. Monte Carlo: within 4 combined standard errors.
  bool holds() const;
};

/// Largest number of outcome sequences etemadi_exact will enumerate.
inline constexpr std::uint64_t kMaxEnumeration = 10'000'000;
inline constexpr std::uint64_t kMinTrials = 1'000;

/// Exhaustive enumeration of all s^n step sequences. Thresholds are compared
/// with >=, so ties count towards the event.
std::vector<EtemadiResult> etemadi_exact(const StepDistribution& dist, std::uint32_t steps,
                                         std::span<const double> alphas);
EtemadiResult etemadi_exact(const StepDistribution& dist, std::uint32_t steps, double alpha);

/// Monte Carlo estimate from `trials` independent walks; trial t, step k draws
/// from the Philox block (seed; t, k, stream 1).
std::vector<EtemadiResult> etemadi_mc(const StepDistribution& dist, std::uint32_t steps,
                                      std::span<const double> alphas, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers = 1);
EtemadiResult etemadi_mc(const StepDistribution& dist, std::uint32_t steps, double alpha,
                         std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

/// 9 alpha^-4 delta^2: the Markov fourth-moment bound on
/// 3 P(|B(r) - B(s)| >= alpha) for an increment of length delta.
double gaussian_fourth_moment_bound(double alpha, double delta);

/// Markov's inequality with E N^4 = 3: P(|N(0,1)| >= c) <= 3 / c^4.
double markov_normal_tail_bound(double c);

/// P(|N(0,1)| >= c), via erfc.
double normal_two_sided_tail(double c);

}  // namespace brownian
