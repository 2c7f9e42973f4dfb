#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace brownian {

using Json = nlohmann::ordered_json;

/// One verified quantity. Non-finite numbers serialize as null.
struct StatRecord {
  std::string check;     // e.g. "covariance", "ks-marginal"
  std::string quantity;  // e.g. "Cov(B(1/4),B(1/2))"
  double target = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double band = 0.0;
  bool pass = false;
  std::string tolerance;  // how `band` was derived
  std::string seeds;      // "first..last"
  Json extra = Json::object();
};

struct StatReport {
  std::string suite;
  Json config = Json::object();
  std::vector<StatRecord> records;

  bool pass() const;
  void add(StatRecord record) { records.push_back(std::move(record)); }
  Json to_json() const;
  /// Flat table, one record per row, config echoed on a leading `#` line.
  std::string to_csv() const;
};

Json to_json(const StatRecord& record);

/// "first..last" for a contiguous seed block.
std::string seed_range(std::uint64_t first, std::uint64_t count);

}  // namespace brownian
