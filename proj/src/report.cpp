#include "brownian/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brownian/path.hpp"

namespace brownian {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_number(double v) { return std::isfinite(v) ? format_round_trip(v) : std::string{}; }

}  // namespace

bool StatReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const StatRecord& r) { return r.pass; });
}

Json to_json(const StatRecord& r) {
  Json j;
  j["check"] = r.check;
  j["quantity"] = r.quantity;
  j["target"] = number(r.target);
  j["estimate"] = number(r.estimate);
  j["stderr"] = number(r.stderr_);
  j["band"] = number(r.band);
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  j["seeds"] = r.seeds;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  return j;
}

Json StatReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["config"] = config;
  Json list = Json::array();
  for (const auto& r : records) list.push_back(brownian::to_json(r));
  j["records"] = std::move(list);
  j["pass"] = pass();
  return j;
}

std::string StatReport::to_csv() const {
  std::ostringstream out;
  out << "# " << Json{{"suite", suite}, {"config", config}}.dump() << '\n';
  out << "check,quantity,target,estimate,stderr,band,pass,tolerance,seeds\n";
  for (const auto& r : records) {
    out << csv_field(r.check) << ',' << csv_field(r.quantity) << ',' << csv_number(r.target) << ','
        << csv_number(r.estimate) << ',' << csv_number(r.stderr_) << ',' << csv_number(r.band) << ','
        << (r.pass ? "true" : "false") << ',' << csv_field(r.tolerance) << ',' << csv_field(r.seeds) << '\n';
  }
  return out.str();
}

std::string seed_range(std::uint64_t first, std::uint64_t count) {
  if (count == 0) return "";
  return std::to_string(first) + ".." + std::to_string(first + (count - 1));
}

}  // namespace brownian
