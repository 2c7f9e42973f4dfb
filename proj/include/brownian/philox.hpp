#pragma once

#include <array>
#include <cstdint>

namespace brownian {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11): a keyed
/// bijection on 128-bit counters. Stateless, so any counter can be evaluated
/// in any order on any thread.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter apply(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  static constexpr Key key_from(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Two uniforms on the open interval (0, 1), 53 bits each, from one Philox block.
struct UniformPair {
  double first;
  double second;
};

UniformPair philox_uniforms(std::uint64_t seed, std::uint64_t index, std::uint32_t sub_index,
                            std::uint32_t stream);

/// Box-Muller transform of a uniform pair; uses only the cosine branch.
double box_muller(const UniformPair& u);

}  // namespace brownian
