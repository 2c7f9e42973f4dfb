#include "brownian/noise.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "brownian/philox.hpp"

namespace brownian {

namespace {

constexpr std::uint32_t kPathStream = 0;

double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

UniformPair philox_uniforms(std::uint64_t seed, std::uint64_t index, std::uint32_t sub_index,
                            std::uint32_t stream) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(index),
                                static_cast<std::uint32_t>(index >> 32), sub_index, stream};
  const auto out = Philox4x32::apply(ctr, Philox4x32::key_from(seed));
  return {to_open_unit(out[0], out[1]), to_open_unit(out[2], out[3])};
}

double box_muller(const UniformPair& u) {
  return std::sqrt(-2.0 * std::log(u.first)) * std::cos(2.0 * std::numbers::pi * u.second);
}

double PhiloxNormalGenerator::draw(std::uint64_t seed, Dyadic r) const {
  return box_muller(philox_uniforms(seed, r.numerator(), r.level(), kPathStream));
}

ScaledGenerator::ScaledGenerator(std::shared_ptr<const NoiseGenerator> base, double scale)
    : base_(std::move(base)), scale_(scale) {
  if (!base_) throw std::invalid_argument("scaled generator needs a base generator");
}

double ScaledGenerator::draw(std::uint64_t seed, Dyadic r) const {
  if (scale_ == 0.0) return 0.0;
  return scale_ * base_->draw(seed, r);
}

std::string ScaledGenerator::id() const {
  std::ostringstream os;
  os.precision(17);
  os << base_->id() << "*" << scale_;
  return os.str();
}

std::shared_ptr<const NoiseGenerator> default_generator() {
  static const auto instance = std::make_shared<const PhiloxNormalGenerator>();
  return instance;
}

NoiseSource::NoiseSource(std::uint64_t seed, std::shared_ptr<const NoiseGenerator> generator)
    : seed_(seed), generator_(std::move(generator)) {
  if (!generator_) throw std::invalid_argument("noise source needs a generator");
}

}  // namespace brownian
