#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algorank/compare.hpp"
#include "algorank/errors.hpp"
#include "algorank/measurements.hpp"

namespace algorank {

struct RankedEntry {
  std::string id;
  int rank;

  bool operator==(const RankedEntry&) const = default;
};

// Algorithms in performance order with one integer rank per position. Ranks
// are non-decreasing along the sequence and the distinct values are exactly
// {1, ..., k} for some k <= p; equal ranks mark statistically equivalent
// algorithms.
struct RankedSequence {
  std::vector<RankedEntry> entries;

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.id);
    return out;
  }

  std::vector<int> ranks() const {
    std::vector<int> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.rank);
    return out;
  }

  int rank_of(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return e.rank;
    throw Error("unknown algorithm id: " + id);
  }

  void validate() const {
    if (entries.empty()) throw InternalError("ranked sequence is empty");
    if (entries.front().rank != 1) throw InternalError("first rank must be 1");
    int prev = 1;
    int max_rank = 1;
    for (std::size_t i = 1; i < entries.size(); ++i) {
      const int r = entries[i].rank;
      if (r < prev || r > prev + 1)
        throw InternalError("ranks must be non-decreasing with unit steps");
      prev = r;
      max_rank = std::max(max_rank, r);
    }
    // unit steps from 1 imply the distinct ranks are exactly {1, ..., max}
    (void)max_rank;
  }
};

using MeasurementMap = std::map<std::string, MeasurementSet>;

// Bubble sort adapted to a three-way comparator. `cmp(left, right)` reports
// the outcome for the pair in sequence order (Faster = left is faster).
//
// Rank updates, with ranks attached to positions:
//  - right faster, ranks differ: swap positions only.
//  - right faster, ranks equal: swap, then the loser and every later
//    algorithm still holding the broken rank move down into the next class.
//  - equivalent, ranks differ: no swap; ranks of all later positions drop by
//    one, merging the right algorithm's class into the left one's.
//  - left faster: nothing changes.
template <typename ThreeWayCmp>
RankedSequence sort_algs(std::vector<std::string> order, ThreeWayCmp&& cmp) {
  if (order.empty()) throw Error("sort_algs requires at least one algorithm");
  const std::size_t p = order.size();
  std::vector<int> rank(p);
  std::iota(rank.begin(), rank.end(), 1);

  for (std::size_t pass = 1; pass <= p; ++pass) {
    for (std::size_t j = 0; j + pass < p; ++j) {
      const ComparisonOutcome out = cmp(order[j], order[j + 1]);
      if (out == ComparisonOutcome::Slower) {
        std::swap(order[j], order[j + 1]);
        if (rank[j + 1] == rank[j]) {
          const int broken = rank[j];
          for (std::size_t t = j + 1; t < p && rank[t] == broken; ++t) ++rank[t];
        }
      } else if (out == ComparisonOutcome::Equivalent) {
        if (rank[j + 1] != rank[j]) {
          for (std::size_t t = j + 1; t < p; ++t) --rank[t];
        }
      }
    }
  }

  RankedSequence seq;
  seq.entries.reserve(p);
  for (std::size_t i = 0; i < p; ++i) seq.entries.push_back({std::move(order[i]), rank[i]});
  seq.validate();
  return seq;
}

inline const MeasurementSet& find_measurements(const MeasurementMap& data, const std::string& id) {
  const auto it = data.find(id);
  if (it == data.end()) throw Error("no measurements for algorithm: " + id);
  return it->second;
}

inline RankedSequence sort_algs(const std::vector<std::string>& order, const MeasurementMap& data,
                                const QuantileRange& range) {
  return sort_algs(order, [&](const std::string& l, const std::string& r) {
    return compare(find_measurements(data, l), find_measurements(data, r), range);
  });
}

// The range whose sequence is reported as the headline ranking: the family
// member closest to (25, 75) by L1 distance, earliest on ties. For the
// default family this is (25, 75) itself.
inline std::size_t headline_range_index(std::span<const QuantileRange> ranges) {
  if (ranges.empty()) throw Error("quantile range family is empty");
  std::size_t best = 0;
  double best_dist = -1.0;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    const double dist = std::abs(ranges[i].lower - 25.0) + std::abs(ranges[i].upper - 75.0);
    if (best_dist < 0.0 || dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

// Per-algorithm mean rank over a family of quantile ranges, plus the retained
// headline sequence.
struct MeanRankTable {
  RankedSequence headline;
  QuantileRange headline_range;
  std::map<std::string, double> mean;

  double mean_of(const std::string& id) const {
    const auto it = mean.find(id);
    if (it == mean.end()) throw Error("unknown algorithm id: " + id);
    return it->second;
  }

  // Mean ranks in headline-sequence order (the x vector of the convergence
  // check).
  std::vector<double> means_in_sequence_order() const {
    std::vector<double> out;
    out.reserve(headline.entries.size());
    for (const auto& e : headline.entries) out.push_back(mean_of(e.id));
    return out;
  }
};

// Sorts once per quantile range, always from the same initial order, and
// averages the per-range ranks. `cmp(left, right, range)` supplies the
// three-way outcome for one range.
template <typename RangeCmp>
MeanRankTable mean_ranks(const std::vector<std::string>& order,
                         std::span<const QuantileRange> ranges, RangeCmp&& cmp) {
  if (order.empty()) throw Error("mean_ranks requires at least one algorithm");
  if (ranges.empty()) throw Error("mean_ranks requires at least one quantile range");

  const std::size_t headline_idx = headline_range_index(ranges);
  std::map<std::string, double> sum;
  RankedSequence headline;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    RankedSequence seq = sort_algs(order, [&](const std::string& l, const std::string& r) {
      return cmp(l, r, ranges[i]);
    });
    for (const auto& e : seq.entries) sum[e.id] += e.rank;
    if (i == headline_idx) headline = std::move(seq);
  }

  MeanRankTable table{std::move(headline), ranges[headline_idx], {}};
  for (auto& [id, total] : sum) table.mean.emplace(id, total / static_cast<double>(ranges.size()));
  return table;
}

inline MeanRankTable mean_ranks(const std::vector<std::string>& order, const MeasurementMap& data,
                                std::span<const QuantileRange> ranges) {
  return mean_ranks(order, ranges,
                    [&](const std::string& l, const std::string& r, const QuantileRange& range) {
                      return compare(find_measurements(data, l), find_measurements(data, r), range);
                    });
}

}  // namespace algorank
