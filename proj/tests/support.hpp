#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "brownian/noise.hpp"

namespace brownian::testing {

// Noise field given by a lookup table; unlisted points draw `fallback`.
class TableGenerator final : public NoiseGenerator {
 public:
  explicit TableGenerator(std::map<std::pair<std::uint64_t, std::uint32_t>, double> table, double fallback = 0.0)
      : table_(std::move(table)), fallback_(fallback) {}

  double draw(std::uint64_t, Dyadic r) const override {
    const auto it = table_.find({r.numerator(), r.level()});
    return it == table_.end() ? fallback_ : it->second;
  }
  std::string id() const override { return "table"; }

 private:
  std::map<std::pair<std::uint64_t, std::uint32_t>, double> table_;
  double fallback_;
};

inline std::shared_ptr<const NoiseGenerator> table_noise(
    std::map<std::pair<std::uint64_t, std::uint32_t>, double> table, double fallback = 0.0) {
  return std::make_shared<TableGenerator>(std::move(table), fallback);
}

inline std::shared_ptr<const NoiseGenerator> zero_noise() { return table_noise({}); }

}  // namespace brownian::testing
