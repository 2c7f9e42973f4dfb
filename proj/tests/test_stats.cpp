#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "brownian/ks.hpp"
#include "brownian/moments.hpp"

using namespace brownian;

TEST(MomentAccumulator, MatchesTwoPass) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(3.0, 2.0);
  std::vector<std::array<double, 2>> rows(5000);
  for (auto& r : rows) {
    r[0] = nd(rng);
    r[1] = 0.5 * r[0] + nd(rng);
  }
  MomentAccumulator acc(2);
  for (const auto& r : rows) acc.add(r);

  double m0 = 0, m1 = 0;
  for (const auto& r : rows) m0 += r[0], m1 += r[1];
  m0 /= rows.size(), m1 /= rows.size();
  double c01 = 0, c00 = 0;
  for (const auto& r : rows) c01 += (r[0] - m0) * (r[1] - m1), c00 += (r[0] - m0) * (r[0] - m0);
  c01 /= rows.size() - 1, c00 /= rows.size() - 1;

  EXPECT_NEAR(acc.mean(0), m0, 1e-12);
  EXPECT_NEAR(acc.mean(1), m1, 1e-12);
  EXPECT_NEAR(acc.covariance(0, 1), c01, 1e-10);
  EXPECT_NEAR(acc.covariance(0, 0), c00, 1e-10);
  EXPECT_EQ(acc.count(), 5000u);
}

TEST(MomentAccumulator, MergeEqualsSinglePass) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  MomentAccumulator whole(3), left(3), right(3);
  for (int i = 0; i < 3000; ++i) {
    const std::array<double, 3> x{nd(rng), nd(rng) + 5.0, nd(rng) * 3.0};
    whole.add(x);
    (i < 1234 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), whole.count());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(left.mean(i), whole.mean(i), 1e-9);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(left.covariance(i, j), whole.covariance(i, j), 1e-9);
  }
}

TEST(MomentAccumulator, MergeWithEmpty) {
  MomentAccumulator a(1), empty(1);
  a.add(std::array<double, 1>{1.0});
  a.add(std::array<double, 1>{3.0});
  a.merge(empty);
  EXPECT_EQ(a.count(), 2u);
  EXPECT_DOUBLE_EQ(a.mean(0), 2.0);
  empty.merge(a);
  EXPECT_DOUBLE_EQ(empty.covariance(0, 0), 2.0);
}

TEST(MomentAccumulator, LinearCombination) {
  MomentAccumulator acc(2);
  for (double x : {0.0, 1.0, 2.0, 5.0}) acc.add(std::array<double, 2>{x, 2.0 * x});
  const std::array<double, 2> diff{-1.0, 1.0};
  // (2x - x) has the variance of x
  EXPECT_NEAR(acc.covariance(diff, diff), acc.covariance(0, 0), 1e-12);
}

TEST(MomentAccumulator, DimensionMismatch) {
  MomentAccumulator acc(2);
  EXPECT_THROW(acc.add(std::array<double, 1>{1.0}), std::invalid_argument);
  EXPECT_THROW(acc.merge(MomentAccumulator(3)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov
// ---------------------------------------------------------------------------

TEST(Kolmogorov, Survival) {
  // reference values of the limiting Kolmogorov law
  EXPECT_NEAR(kolmogorov_survival(0.5), 0.9639452436648751, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(1.0), 0.26999967167735456, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(1.36), 0.049485876755377876, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(2.0), 0.0006709252557796953, 1e-14);
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(Kolmogorov, SeriesAgreeAtSwitch) {
  EXPECT_NEAR(kolmogorov_survival(std::nextafter(1.0, 0.0)), kolmogorov_survival(1.0), 1e-12);
}

TEST(Kolmogorov, Critical) {
  EXPECT_NEAR(kolmogorov_critical(0.01), 1.6276236115189504, 1e-9);
  EXPECT_NEAR(kolmogorov_critical(0.05), 1.3580986393225507, 1e-9);
  EXPECT_NEAR(kolmogorov_survival(kolmogorov_critical(0.01)), 0.01, 1e-12);
}

TEST(KsOneSample, StatisticOnKnownSample) {
  // D for {0.1, 0.4, 0.7} against U(0,1): max(1/3-0.1, 0.4-1/3, 2/3-0.4, 0.7-2/3, 1-0.7) = 0.3
  std::vector<double> xs;
  for (int rep = 0; rep < 400; ++rep)
    for (double x : {0.1, 0.4, 0.7}) xs.push_back(x);
  const auto r = ks_one_sample(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }, 0.01);
  EXPECT_NEAR(r.statistic, 0.3, 1e-12);
  EXPECT_TRUE(r.rejected);
}

TEST(KsOneSample, NormalSampleNotRejected) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  std::vector<double> xs(20000);
  for (auto& x : xs) x = nd(rng);
  const auto r = ks_one_sample(xs, standard_normal_cdf, 0.01);
  EXPECT_FALSE(r.rejected);
  EXPECT_NEAR(r.critical, kolmogorov_critical(0.01) / std::sqrt(20000.0), 1e-12);
}

TEST(KsOneSample, ShiftedSampleRejected) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd(0.2, 1.0);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = nd(rng);
  EXPECT_TRUE(ks_one_sample(xs, standard_normal_cdf, 0.01).rejected);
}

TEST(KsOneSample, RejectsSmallSample) {
  std::vector<double> xs(kMinKsSample - 1, 0.0);
  EXPECT_THROW(ks_one_sample(xs, standard_normal_cdf, 0.01), std::invalid_argument);
}

TEST(KsTwoSample, IdenticalSamples) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<double> xs(2000);
  for (auto& x : xs) x = nd(rng);
  const auto r = ks_two_sample(xs, xs, 0.01);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_FALSE(r.rejected);
}

TEST(KsTwoSample, DisjointSamples) {
  std::vector<double> a(1000), b(1000);
  for (int i = 0; i < 1000; ++i) a[i] = i, b[i] = 1000 + i;
  const auto r = ks_two_sample(a, b, 0.01);
  EXPECT_EQ(r.statistic, 1.0);
  EXPECT_TRUE(r.rejected);
}

TEST(StandardNormalCdf, Values) {
  EXPECT_DOUBLE_EQ(standard_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(standard_normal_cdf(1.959963984540054), 0.975, 1e-14);
}
