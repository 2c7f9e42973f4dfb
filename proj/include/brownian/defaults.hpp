#pragma once

// Pre-registered suite parameters. Changing any value here changes what a
// passing report means, so bump kVersion with every edit.

#include <array>
#include <cstdint>
#include <string_view>

namespace brownian::defaults {

inline constexpr std::string_view kVersion = "1";

// verify-law
inline constexpr std::uint64_t kLawPaths = 100'000;
inline constexpr std::uint32_t kLawHorizon = 2;
inline constexpr std::uint32_t kLawLevel = 6;
inline constexpr std::uint64_t kLawMinPaths = 1'000;
inline constexpr std::array<std::string_view, 3> kCovariancePoints{"1/4", "1/2", "1"};
inline constexpr std::array<std::string_view, 4> kMarginalPoints{"1/4", "1/2", "1", "3/2"};

/// Registered pairs of disjoint intervals (r1, r2, r3, r4), r1 < r2 <= r3 < r4.
inline constexpr std::array<std::array<std::string_view, 4>, 6> kIntervalPairs{{
    {"0", "1/2", "1/2", "1"},
    {"1/4", "1/2", "3/4", "1"},
    {"0", "1", "1", "2"},
    {"1/8", "3/8", "3/8", "5/4"},
    {"1/2", "3/2", "3/2", "2"},
    {"3/64", "17/64", "33/64", "63/64"},
}};

// verify-modulus
inline constexpr std::uint32_t kModulusLevel = 2;
inline constexpr std::uint32_t kMeasurementLevel = 10;
inline constexpr std::uint64_t kModulusPaths = 10'000;
inline constexpr std::array<double, 3> kModulusAlphas{0.5, 0.75, 1.0};
inline constexpr std::uint32_t kBoundTableMax = 30;
inline constexpr std::uint32_t kSeriesMax = 200;

// verify-etemadi
inline constexpr std::uint64_t kEtemadiTrials = 100'000;
inline constexpr std::array<std::uint32_t, 13> kRademacherSteps{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 20};
inline constexpr std::array<std::uint32_t, 2> kGaussianSteps{64, 256};
/// alpha = j / 8, j = 0 .. 19.
inline constexpr std::size_t kAlphaGridSize = 20;
inline constexpr double kAlphaGridStep = 0.125;

}  // namespace brownian::defaults
