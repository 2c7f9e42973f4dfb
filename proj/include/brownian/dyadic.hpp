#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace brownian {

/// A non-negative dyadic rational numerator / 2^level, always held in
/// canonical form: the numerator is odd, or the level is zero.
class Dyadic {
 public:
  constexpr Dyadic() = default;

  /// Canonical representative of k / 2^n.
  static constexpr Dyadic canonical(std::uint64_t k, std::uint32_t n) {
    if (k == 0) return Dyadic{0, 0};
    while (n > 0 && (k & 1u) == 0) {
      k >>= 1;
      --n;
    }
    return Dyadic{k, n};
  }

  static constexpr Dyadic integer(std::uint64_t k) { return Dyadic{k, 0}; }

  constexpr std::uint64_t numerator() const { return numerator_; }
  constexpr std::uint32_t level() const { return level_; }

  /// Nearest double; exact whenever the numerator fits in 53 bits.
  double value() const;

  /// Index of this point on the grid {k / 2^n}, if it lies on that grid.
  std::optional<std::uint64_t> index_at(std::uint32_t n) const;

  /// True for members of D_n = {k / 2^n}.
  constexpr bool on_grid(std::uint32_t n) const { return level_ <= n; }

  /// Exact decimal expansion ("0.25", "3", "0.001953125").
  std::string to_decimal() const;

  friend constexpr bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  constexpr Dyadic(std::uint64_t k, std::uint32_t n) : numerator_(k), level_(n) {}

  std::uint64_t numerator_ = 0;
  std::uint32_t level_ = 0;
};

/// Free-function form of Dyadic::canonical.
constexpr Dyadic canonicalize(std::uint64_t k, std::uint32_t n) {
  return Dyadic::canonical(k, n);
}

/// Exact difference b - a for a <= b.
Dyadic subtract(const Dyadic& b, const Dyadic& a);

/// Parses "k/2^n", "k/m" with m a power of two, or a finite decimal like "0.375".
std::optional<Dyadic> parse_dyadic(const std::string& text);

}  // namespace brownian
