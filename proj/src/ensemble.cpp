#include "brownian/ensemble.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "brownian/parallel.hpp"
#include "brownian/path.hpp"
#include "brownian/report.hpp"

namespace brownian {

std::size_t Ensemble::probe_index(Dyadic t) const {
  if (!t.on_grid(config_.level) || t.value() > config_.horizon) {
    throw std::invalid_argument("time " + t.to_decimal() + " is not on the ensemble grid");
  }
  const auto it = std::find(probes_.begin(), probes_.end(), t);
  if (it == probes_.end()) throw std::invalid_argument("time " + t.to_decimal() + " is not a probe of this ensemble");
  return static_cast<std::size_t>(it - probes_.begin());
}

bool Ensemble::is_probe(Dyadic t) const { return std::find(probes_.begin(), probes_.end(), t) != probes_.end(); }

void Ensemble::merge(const Ensemble& other) {
  if (other.config_.horizon != config_.horizon || other.config_.level != config_.level ||
      other.probes_ != probes_ || other.generator_id_ != generator_id_) {
    throw std::invalid_argument("ensembles differ in grid, probes or generator");
  }
  for (const auto& a : seed_ranges_) {
    for (const auto& b : other.seed_ranges_) {
      const bool disjoint = a.first + a.count <= b.first || b.first + b.count <= a.first;
      if (!disjoint) throw std::invalid_argument("ensembles share seeds");
    }
  }
  moments_.merge(other.moments_);
  seed_ranges_.insert(seed_ranges_.end(), other.seed_ranges_.begin(), other.seed_ranges_.end());
  if (has_samples() && other.has_samples() && sample_stride_ == 1 && other.sample_stride_ == 1) {
    for (std::size_t p = 0; p < samples_.size(); ++p) {
      samples_[p].insert(samples_[p].end(), other.samples_[p].begin(), other.samples_[p].end());
    }
  } else {
    samples_.clear();
  }
  config_.paths = moments_.count();
}

std::string Ensemble::seeds_text() const {
  std::string out;
  for (const auto& r : seed_ranges_) {
    if (!out.empty()) out += ",";
    out += seed_range(r.first, r.count);
  }
  return out;
}

Ensemble generate_ensemble(const EnsembleConfig& config, const RunOptions& options) {
  if (config.horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  if (config.paths == 0) throw std::invalid_argument("ensemble needs at least one path");
  if (config.level > kMaxLevel) throw std::length_error("level exceeds the dense-storage limit");
  if (config.base_seed > std::numeric_limits<std::uint64_t>::max() - (config.paths - 1)) {
    throw std::overflow_error("seed range overflows 64 bits");
  }
  if (config.sample_cap == 0) throw std::invalid_argument("sample cap must be positive");

  Ensemble ens;
  ens.config_ = config;
  ens.generator_id_ = options.generator->id();
  ens.seed_ranges_ = {{config.base_seed, config.paths}};

  std::vector<std::size_t> probe_grid;
  if (config.probes.empty()) {
    const std::size_t points = (static_cast<std::size_t>(config.horizon) << config.level) + 1;
    for (std::size_t k = 0; k < points; ++k) {
      ens.probes_.push_back(Dyadic::canonical(k, config.level));
      probe_grid.push_back(k);
    }
  } else {
    for (const auto& t : config.probes) {
      const auto k = t.index_at(config.level);
      if (!k || t.value() > config.horizon) {
        throw std::invalid_argument("probe " + t.to_decimal() + " is not on the ensemble grid");
      }
      if (std::find(ens.probes_.begin(), ens.probes_.end(), t) != ens.probes_.end()) continue;
      ens.probes_.push_back(t);
      probe_grid.push_back(static_cast<std::size_t>(*k));
    }
  }
  const std::size_t dim = ens.probes_.size();
  ens.moments_ = MomentAccumulator(dim);
  ens.sample_stride_ = (config.paths + config.sample_cap - 1) / config.sample_cap;

  const std::size_t blocks = (config.paths + kBlockSize - 1) / kBlockSize;
  struct BlockResult {
    MomentAccumulator moments;
    std::vector<std::vector<double>> samples;
  };
  std::vector<BlockResult> results(blocks);

  for_each_block(blocks, options.workers, [&](std::size_t b) {
    BlockResult& out = results[b];
    out.moments = MomentAccumulator(dim);
    if (config.retain_samples) out.samples.assign(dim, {});
    std::vector<double> row(dim);
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min<std::uint64_t>(config.paths, begin + kBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      const NoiseSource src(config.base_seed + i, options.generator);
      const DyadicPath path = construct(config.horizon, config.level, src);
      for (std::size_t p = 0; p < dim; ++p) row[p] = path[probe_grid[p]];
      out.moments.add(row);
      if (config.retain_samples && i % ens.sample_stride_ == 0) {
        for (std::size_t p = 0; p < dim; ++p) out.samples[p].push_back(row[p]);
      }
    }
  });

  if (config.retain_samples) ens.samples_.assign(dim, {});
  for (auto& r : results) {
    ens.moments_.merge(r.moments);
    if (config.retain_samples) {
      for (std::size_t p = 0; p < dim; ++p) {
        ens.samples_[p].insert(ens.samples_[p].end(), r.samples[p].begin(), r.samples[p].end());
      }
    }
  }
  return ens;
}

}  // namespace brownian
