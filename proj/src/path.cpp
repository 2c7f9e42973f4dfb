#include "brownian/path.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace brownian {

namespace {

std::size_t grid_size(std::uint32_t horizon, std::uint32_t level) {
  if (level > kMaxLevel) throw std::length_error("level exceeds the dense-storage limit");
  return (static_cast<std::size_t>(horizon) << level) + 1;
}

}  // namespace

DyadicPath::DyadicPath(std::uint32_t horizon, std::uint32_t level, std::uint64_t seed,
                       std::string generator_id, std::vector<double> values)
    : horizon_(horizon),
      level_(level),
      seed_(seed),
      generator_id_(std::move(generator_id)),
      values_(std::move(values)) {}

double DyadicPath::at(Dyadic r) const {
  const auto k = r.index_at(level_);
  if (!k || *k >= values_.size()) throw std::out_of_range("time " + r.to_decimal() + " is not on the path grid");
  return values_[*k];
}

DyadicPath DyadicPath::downsample(std::uint32_t m) const {
  if (m > level_) throw std::invalid_argument("cannot downsample to a finer level");
  const std::size_t stride = std::size_t{1} << (level_ - m);
  std::vector<double> coarse(grid_size(horizon_, m));
  for (std::size_t k = 0; k < coarse.size(); ++k) coarse[k] = values_[k * stride];
  return DyadicPath(horizon_, m, seed_, generator_id_, std::move(coarse));
}

DyadicPath construct_level0(std::uint32_t horizon, const NoiseSource& src) {
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<double> values(grid_size(horizon, 0));
  values[0] = 0.0;
  for (std::uint32_t k = 1; k <= horizon; ++k) values[k] = values[k - 1] + src(Dyadic::integer(k));
  return DyadicPath(horizon, 0, src.seed(), src.generator_id(), std::move(values));
}

DyadicPath refine(const DyadicPath& path, const NoiseSource& src) {
  if (src.seed() != path.seed() || src.generator_id() != path.generator_id()) {
    throw std::invalid_argument("refinement must reuse the noise family that built the path");
  }
  const std::uint32_t n = path.level();
  const std::uint32_t next = n + 1;
  const double noise_scale = std::sqrt(std::ldexp(1.0, -static_cast<int>(n + 2)));
  const auto coarse = path.values();

  std::vector<double> fine(grid_size(path.horizon(), next));
  for (std::size_t l = 0; l + 1 < coarse.size(); ++l) {
    fine[2 * l] = coarse[l];
    const double midpoint = 0.5 * (coarse[l] + coarse[l + 1]);
    const auto r = Dyadic::canonical(2 * l + 1, next);
    fine[2 * l + 1] = midpoint + src(r) * noise_scale;
  }
  fine.back() = coarse.back();
  return DyadicPath(path.horizon(), next, path.seed(), path.generator_id(), std::move(fine));
}

DyadicPath refine_to(const DyadicPath& path, std::uint32_t target_level, const NoiseSource& src) {
  if (target_level < path.level()) throw std::invalid_argument("target level is coarser than the path");
  if (target_level > kMaxLevel) throw std::length_error("level exceeds the dense-storage limit");
  DyadicPath current = path;
  while (current.level() < target_level) current = refine(current, src);
  return current;
}

DyadicPath construct(std::uint32_t horizon, std::uint32_t level, const NoiseSource& src) {
  return refine_to(construct_level0(horizon, src), level, src);
}

double evaluate(const DyadicPath& path, double t) {
  if (!(t >= 0.0 && t <= static_cast<double>(path.horizon()))) {
    throw std::out_of_range("evaluation time outside [0, horizon]");
  }
  const double x = std::ldexp(t, static_cast<int>(path.level()));
  const double lower = std::floor(x);
  const auto k = static_cast<std::size_t>(lower);
  const auto values = path.values();
  if (x == lower) return values[k];
  const double w = x - lower;
  return values[k] + w * (values[k + 1] - values[k]);
}

std::string format_round_trip(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const DyadicPath& path) {
  out << "t,value\n";
  const auto values = path.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << path.time_at(k).to_decimal() << ',' << format_round_trip(values[k]) << '\n';
  }
}

}  // namespace brownian
