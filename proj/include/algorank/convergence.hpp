#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/measurements.hpp"
#include "algorank/presets.hpp"
#include "algorank/rank.hpp"
#include "algorank/rng.hpp"
#include "algorank/source.hpp"

namespace algorank {

// Differences between adjacent mean ranks: dx[j] = x[j+1] - x[j]. Length is
// one less than the input; empty for a single algorithm.
inline std::vector<double> rank_delta(std::span<const double> x) {
  std::vector<double> dx;
  if (x.size() < 2) return dx;
  dx.reserve(x.size() - 1);
  for (std::size_t j = 0; j + 1 < x.size(); ++j) dx.push_back(x[j + 1] - x[j]);
  return dx;
}

// Stopping value ||dx - dy||_L2 / p for the iterative loop.
inline double convergence_norm(std::span<const double> dx, std::span<const double> dy, int p) {
  if (dx.size() != dy.size()) throw Error("rank-delta vectors differ in length");
  if (p < 1) throw Error("algorithm count must be positive");
  double sum = 0.0;
  for (std::size_t j = 0; j < dx.size(); ++j) {
    const double d = dx[j] - dy[j];
    sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(p);
}

struct IterationSnapshot {
  int n_measurements;
  double norm;
  RankedSequence sequence;
  std::vector<double> mean_ranks;  // aligned with sequence order
};

struct ConvergenceState {
  int iterations = 0;
  int n = 0;  // measurements per algorithm so far
  std::vector<double> x;
  std::vector<double> dx;
  std::vector<double> dy;
  double norm = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool max_reached = false;  // stopped by the measurement cap, not by eps
  std::vector<IterationSnapshot> history;
};

struct DriverOptions {
  int batch = 3;              // M: measurements added per algorithm per iteration
  double eps = 0.03;          // convergence threshold
  int max_measurements = 30;  // cap on measurements per algorithm
  std::vector<QuantileRange> ranges = default_quantile_family();
  std::uint64_t seed = 0;
};

// A failed campaign; carries whatever iterations completed before the
// measurement source gave out.
struct CampaignError : Error {
  CampaignError(const std::string& what, ConvergenceState partial_state)
      : Error(what), partial(std::move(partial_state)) {}
  ConvergenceState partial;
};

struct CampaignResult {
  MeanRankTable table;
  ConvergenceState state;
};

// Iterative measure-and-rank loop. Each iteration appends `batch` samples per
// algorithm, reshuffles every algorithm's accumulated set (seeded from the
// campaign seed, iteration, and algorithm index), recomputes mean ranks over
// the range family, and feeds the headline sequence back as the next initial
// order. Stops when ||dx - dy|| / p drops below eps or the per-algorithm
// measurement cap is hit; dy starts as all ones so a uniform first iteration
// cannot converge spuriously.
inline CampaignResult measure_and_rank(const std::vector<std::string>& initial_order,
                                       MeasurementSource& source, const DriverOptions& opt) {
  if (initial_order.empty()) throw ConfigError("campaign requires at least one algorithm");
  if (opt.batch < 1) throw ConfigError("batch size must be at least 1");
  if (opt.max_measurements < opt.batch)
    throw ConfigError("measurement cap must be at least one batch");
  if (!(opt.eps > 0.0)) throw ConfigError("eps must be positive");
  if (opt.ranges.empty()) throw ConfigError("quantile range family is empty");
  {
    std::unordered_set<std::string> seen;
    for (const auto& id : initial_order)
      if (!seen.insert(id).second) throw ConfigError("duplicate algorithm id: " + id);
  }

  const std::size_t p = initial_order.size();
  std::map<std::string, std::size_t> stable_index;
  MeasurementMap data;
  for (std::size_t i = 0; i < p; ++i) {
    stable_index.emplace(initial_order[i], i);
    data.emplace(initial_order[i], MeasurementSet(initial_order[i]));
  }

  ConvergenceState state;
  state.dy.assign(p > 0 ? p - 1 : 0, 1.0);
  std::vector<std::string> order = initial_order;
  MeanRankTable table{RankedSequence{}, QuantileRange(25, 75), {}};

  while (state.norm >= opt.eps && state.n < opt.max_measurements) {
    // One algorithm at a time; timed executions are never interleaved.
    for (const auto& id : order) {
      std::vector<double> batch;
      try {
        batch = source.next_batch(id, opt.batch);
      } catch (const Error& e) {
        throw CampaignError(std::string("measurement failed for ") + id + ": " + e.what(),
                            std::move(state));
      }
      if (batch.size() != static_cast<std::size_t>(opt.batch))
        throw CampaignError("source returned a short batch for " + id, std::move(state));
      auto& set = data.at(id);
      for (double s : batch) set.append(s);
    }
    state.iterations += 1;
    state.n += opt.batch;

    for (const auto& id : order) {
      std::mt19937_64 gen(derive_seed(opt.seed, static_cast<std::uint64_t>(state.iterations),
                                      static_cast<std::uint64_t>(stable_index.at(id))));
      auto& set = data.at(id);
      set = algorank::shuffle(set, gen);
    }

    table = mean_ranks(order, data, opt.ranges);
    state.x = table.means_in_sequence_order();
    state.dx = rank_delta(state.x);
    state.norm = convergence_norm(state.dx, state.dy, static_cast<int>(p));
    state.dy = state.dx;
    order = table.headline.ids();
    state.history.push_back({state.n, state.norm, table.headline, state.x});
  }

  state.converged = state.norm < opt.eps;
  state.max_reached = !state.converged;
  return {std::move(table), std::move(state)};
}

}  // namespace algorank
