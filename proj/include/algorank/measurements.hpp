#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/rng.hpp"

namespace algorank {

// Execution-time samples (seconds) collected for one algorithm. Samples are
// strictly positive, finite, and kept in insertion order.
class MeasurementSet {
 public:
  explicit MeasurementSet(std::string alg_id) : alg_id_(std::move(alg_id)) {}

  MeasurementSet(std::string alg_id, std::vector<double> samples)
      : alg_id_(std::move(alg_id)) {
    samples_.reserve(samples.size());
    for (double s : samples) append(s);
  }

  void append(double seconds) {
    if (!(seconds > 0.0) || !std::isfinite(seconds))
      throw Error("measurement must be a positive finite time in seconds");
    samples_.push_back(seconds);
  }

  const std::string& id() const { return alg_id_; }
  std::size_t count() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::span<const double> samples() const { return samples_; }

 private:
  std::string alg_id_;
  std::vector<double> samples_;
};

// Percentile pair delimiting the portion of a timing distribution used for
// comparison; bounds are in (0, 100) with upper > lower.
struct QuantileRange {
  double lower;
  double upper;

  QuantileRange(double lower_pct, double upper_pct) : lower(lower_pct), upper(upper_pct) {
    if (!(lower > 0.0 && lower < 100.0) || !(upper > 0.0 && upper < 100.0))
      throw ConfigError("quantile bounds must lie in (0, 100)");
    if (!(upper > lower)) throw ConfigError("quantile range requires upper > lower");
  }

  bool operator==(const QuantileRange& other) const = default;
};

// Linear interpolation between adjacent order statistics of a pre-sorted
// sample vector: h = (n-1)q/100, result = s[h] + frac(h) * (s[h+1] - s[h]).
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error("no measurements");
  if (q < 0.0 || q > 100.0) throw Error("quantile must lie in [0, 100]");
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * q / 100.0;
  const auto lo = static_cast<std::size_t>(h);
  if (lo >= n - 1) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(const MeasurementSet& set, double q) {
  std::vector<double> sorted(set.samples().begin(), set.samples().end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, q);
}

// Unbiased Fisher-Yates permutation of the sample order; values unchanged.
inline MeasurementSet shuffle(const MeasurementSet& set, std::mt19937_64& gen) {
  std::vector<double> values(set.samples().begin(), set.samples().end());
  fisher_yates(values, gen);
  return MeasurementSet(set.id(), std::move(values));
}

}  // namespace algorank
