#include "brownian/dyadic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace brownian {

namespace {

__extension__ using u128 = unsigned __int128;

// a.k * 2^(L - a.n) vs b.k * 2^(L - b.n) with a.n <= b.n.
std::strong_ordering compare_aligned(std::uint64_t coarse_k, std::uint32_t shift,
                                     std::uint64_t fine_k) {
  if (coarse_k == 0) return 0u <=> fine_k;
  if (shift >= 64) return std::strong_ordering::greater;
  const u128 lifted = static_cast<u128>(coarse_k) << shift;
  const u128 other = fine_k;
  if (lifted < other) return std::strong_ordering::less;
  if (lifted > other) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

double Dyadic::value() const {
  return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(level_));
}

std::optional<std::uint64_t> Dyadic::index_at(std::uint32_t n) const {
  if (level_ > n) return std::nullopt;
  const std::uint32_t shift = n - level_;
  if (numerator_ == 0) return 0;
  if (shift == 0) return numerator_;
  if (shift >= 64 || (numerator_ >> (64 - shift)) != 0) return std::nullopt;
  return numerator_ << shift;
}

std::string Dyadic::to_decimal() const {
  // k / 2^n = k * 5^n / 10^n; digits kept little-endian.
  std::vector<int> digits;
  std::uint64_t k = numerator_;
  do {
    digits.push_back(static_cast<int>(k % 10));
    k /= 10;
  } while (k != 0);
  for (std::uint32_t i = 0; i < level_; ++i) {
    int carry = 0;
    for (auto& d : digits) {
      const int v = d * 5 + carry;
      d = v % 10;
      carry = v / 10;
    }
    while (carry != 0) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  }
  while (digits.size() <= level_) digits.push_back(0);

  std::string out;
  for (std::size_t i = digits.size(); i-- > level_;) out.push_back(static_cast<char>('0' + digits[i]));
  if (level_ > 0) {
    out.push_back('.');
    for (std::size_t i = level_; i-- > 0;) out.push_back(static_cast<char>('0' + digits[i]));
  }
  return out;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.level_ <= b.level_) return compare_aligned(a.numerator_, b.level_ - a.level_, b.numerator_);
  return 0 <=> compare_aligned(b.numerator_, a.level_ - b.level_, a.numerator_);
}

Dyadic subtract(const Dyadic& b, const Dyadic& a) {
  if (b < a) throw std::invalid_argument("dyadic subtraction would be negative");
  const std::uint32_t level = std::max(a.level(), b.level());
  const std::uint32_t sa = level - a.level();
  const std::uint32_t sb = level - b.level();
  if ((a.numerator() != 0 && sa >= 64) || (b.numerator() != 0 && sb >= 64)) {
    throw std::overflow_error("dyadic subtraction out of range");
  }
  const u128 lhs = b.numerator() == 0 ? 0 : static_cast<u128>(b.numerator()) << sb;
  const u128 rhs = a.numerator() == 0 ? 0 : static_cast<u128>(a.numerator()) << sa;
  u128 diff = lhs - rhs;
  std::uint32_t n = level;
  while (n > 0 && diff != 0 && (diff & 1u) == 0) {
    diff >>= 1;
    --n;
  }
  if (diff >> 64) throw std::overflow_error("dyadic subtraction out of range");
  return Dyadic::canonical(static_cast<std::uint64_t>(diff), n);
}

std::optional<Dyadic> parse_dyadic(const std::string& text) {
  auto parse_u64 = [](std::string_view s) -> std::optional<std::uint64_t> {
    std::uint64_t v = 0;
    if (s.empty()) return std::nullopt;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };

  const std::string_view s = text;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto k = parse_u64(s.substr(0, slash));
    std::string_view den = s.substr(slash + 1);
    if (!k) return std::nullopt;
    if (den.size() > 2 && den.substr(0, 2) == "2^") {
      auto n = parse_u64(den.substr(2));
      if (!n || *n > 4096) return std::nullopt;
      return Dyadic::canonical(*k, static_cast<std::uint32_t>(*n));
    }
    auto m = parse_u64(den);
    if (!m || *m == 0 || (*m & (*m - 1)) != 0) return std::nullopt;
    std::uint32_t n = 0;
    for (std::uint64_t v = *m; v > 1; v >>= 1) ++n;
    return Dyadic::canonical(*k, n);
  }

  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (frac.size() > 19 || (whole.empty() && frac.empty())) return std::nullopt;
  u128 scaled = 0;
  for (std::string_view part : {whole, frac}) {
    for (char c : part) {
      if (c < '0' || c > '9') return std::nullopt;
      scaled = scaled * 10 + static_cast<unsigned>(c - '0');
      if (scaled >> 120) return std::nullopt;
    }
  }
  // value = scaled / (2^f * 5^f); the 5^f factor must divide out.
  u128 five_pow = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) five_pow *= 5;
  if (scaled % five_pow != 0) return std::nullopt;
  const u128 k = scaled / five_pow;
  if (k >> 64) return std::nullopt;
  return Dyadic::canonical(static_cast<std::uint64_t>(k), static_cast<std::uint32_t>(frac.size()));
}

}  // namespace brownian
