#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/rng.hpp"
#include "algorank/source.hpp"

namespace algorank {

// One mode of a synthetic timing distribution. A pair of components at
// different locations emulates the bimodal timings of a frequency-scaling
// processor.
struct MixtureComponent {
  double weight;
  double location;  // seconds
  double spread;    // gaussian sigma, seconds
};

using MixtureSpec = std::map<std::string, std::vector<MixtureComponent>>;

inline void validate_mixture(const std::string& id, const std::vector<MixtureComponent>& comps) {
  if (comps.empty()) throw ConfigError("mixture for " + id + " has no components");
  double total = 0.0;
  for (const auto& c : comps) {
    if (!(c.weight > 0.0)) throw ConfigError("mixture weight must be positive (" + id + ")");
    if (!(c.location > 0.0)) throw ConfigError("mixture location must be positive (" + id + ")");
    if (c.spread < 0.0) throw ConfigError("mixture spread must be non-negative (" + id + ")");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ConfigError("mixture weights for " + id + " must sum to 1");
}

// Draws gaussian-mixture samples per algorithm, each algorithm on its own
// seeded stream, clamped to stay strictly positive.
class SyntheticSource : public MeasurementSource {
 public:
  SyntheticSource(MixtureSpec spec, std::uint64_t seed) : spec_(std::move(spec)) {
    std::uint64_t index = 0;
    for (const auto& [id, comps] : spec_) {
      validate_mixture(id, comps);
      streams_.emplace(id, std::mt19937_64(derive_seed(seed, index++, 0x73796e7468ULL)));
    }
  }

  std::vector<double> next_batch(const std::string& alg_id, int m) override {
    const auto spec_it = spec_.find(alg_id);
    if (spec_it == spec_.end()) throw SourceError("no mixture defined for " + alg_id);
    auto& gen = streams_.at(alg_id);
    std::vector<double> batch;
    batch.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) batch.push_back(draw(spec_it->second, gen));
    return batch;
  }

 private:
  static double draw(const std::vector<MixtureComponent>& comps, std::mt19937_64& gen) {
    const double pick = unit_double(gen);
    double cumulative = 0.0;
    const MixtureComponent* chosen = &comps.back();
    for (const auto& c : comps) {
      cumulative += c.weight;
      if (pick < cumulative) {
        chosen = &c;
        break;
      }
    }
    const double value = chosen->location + chosen->spread * gaussian(gen);
    return std::max(value, std::numeric_limits<double>::min());
  }

  MixtureSpec spec_;
  std::map<std::string, std::mt19937_64> streams_;
};

}  // namespace algorank
