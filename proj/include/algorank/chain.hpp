#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algorank/errors.hpp"

namespace algorank {

// A matrix chain: dims d0..dL where matrix i is d[i-1] x d[i]. The
// four-matrix product ABCD corresponds to dims (m, n, k, l, q).
struct ChainInstance {
  std::vector<long long> dims;

  explicit ChainInstance(std::vector<long long> dimensions) : dims(std::move(dimensions)) {
    if (dims.size() < 2) throw ConfigError("chain instance needs at least two dimensions");
    for (long long d : dims)
      if (d < 1) throw ConfigError("chain dimensions must be positive");
  }

  std::size_t matrix_count() const { return dims.size() - 1; }
};

// One kernel invocation: multiply the partial product spanning matrices
// [lo, mid) with the one spanning [mid, hi). Span bounds index `dims`.
struct ProductStep {
  std::size_t lo;
  std::size_t mid;
  std::size_t hi;

  bool operator==(const ProductStep&) const = default;
  auto operator<=>(const ProductStep&) const = default;
};

// A parenthesization (the set of steps) together with a kernel execution
// order (the sequence of steps) and its multiply-accumulate cost.
struct AlgorithmVariant {
  std::string id;
  std::vector<ProductStep> steps;
  long long cost = 0;  // sum of rows * inner * cols per step

  long long flops() const { return 2 * cost; }

  // e.g. "(AB)(CD)" for a four-matrix chain.
  std::string expression(const ChainInstance& inst) const;
  // Sub-products in execution order, e.g. {"AB", "CD", "(AB)(CD)"}.
  std::vector<std::string> kernel_sequence(const ChainInstance& inst) const;
};

namespace detail {

inline std::string leaf_name(std::size_t i, std::size_t count) {
  if (count <= 26) return std::string(1, static_cast<char>('A' + i));
  return "M" + std::to_string(i);
}

inline std::vector<std::string> build_expressions(const AlgorithmVariant& v,
                                                  const ChainInstance& inst) {
  const std::size_t n = inst.matrix_count();
  // expr[lo * (n+1) + hi] for spans built so far
  std::vector<std::string> expr((n + 1) * (n + 1));
  for (std::size_t i = 0; i < n; ++i) expr[i * (n + 1) + i + 1] = leaf_name(i, n);
  std::vector<std::string> products;
  products.reserve(v.steps.size());
  for (const auto& s : v.steps) {
    const std::string& left = expr[s.lo * (n + 1) + s.mid];
    const std::string& right = expr[s.mid * (n + 1) + s.hi];
    if (left.empty() || right.empty()) throw InternalError("kernel order violates dependencies");
    std::string combined =
        (s.hi - s.lo == n) ? left + right : "(" + left + right + ")";
    products.push_back(left + right);
    expr[s.lo * (n + 1) + s.hi] = std::move(combined);
  }
  products.push_back(expr[0 * (n + 1) + n]);
  return products;
}

inline void enumerate_rec(const ChainInstance& inst, std::vector<std::size_t>& cuts,
                          std::vector<ProductStep>& steps, long long cost,
                          std::vector<AlgorithmVariant>& out) {
  if (cuts.size() == 2) {
    AlgorithmVariant v;
    v.steps = steps;
    v.cost = cost;
    out.push_back(std::move(v));
    return;
  }
  // merge each adjacent pair of factors; cuts holds the span boundaries
  for (std::size_t i = 0; i + 2 < cuts.size(); ++i) {
    const ProductStep step{cuts[i], cuts[i + 1], cuts[i + 2]};
    const long long step_cost =
        inst.dims[step.lo] * inst.dims[step.mid] * inst.dims[step.hi];
    const std::size_t removed = cuts[i + 1];
    cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(i + 1));
    steps.push_back(step);
    enumerate_rec(inst, cuts, steps, cost + step_cost, out);
    steps.pop_back();
    cuts.insert(cuts.begin() + static_cast<std::ptrdiff_t>(i + 1), removed);
  }
}

}  // namespace detail

inline std::string AlgorithmVariant::expression(const ChainInstance& inst) const {
  auto products = detail::build_expressions(*this, inst);
  return products.back();
}

inline std::vector<std::string> AlgorithmVariant::kernel_sequence(const ChainInstance& inst) const {
  auto products = detail::build_expressions(*this, inst);
  products.pop_back();
  return products;
}

// Every full parenthesization crossed with every kernel execution order;
// (L-1)! variants for an L-matrix chain. Variants are sorted by increasing
// cost (ties keep enumeration order) and named algorithm0, algorithm1, ...
// so that algorithm0 always computes the fewest fused multiply-adds.
inline std::vector<AlgorithmVariant> enumerate_variants(const ChainInstance& inst,
                                                        std::size_t max_matrices = 8) {
  const std::size_t n = inst.matrix_count();
  if (n > max_matrices)
    throw ConfigError("chain enumeration capped at " + std::to_string(max_matrices) +
                      " matrices; got " + std::to_string(n));
  std::vector<AlgorithmVariant> variants;
  if (n == 1) {
    variants.push_back({"", {}, 0});
  } else {
    std::vector<std::size_t> cuts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) cuts[i] = i;
    std::vector<ProductStep> steps;
    detail::enumerate_rec(inst, cuts, steps, 0, variants);
  }
  std::stable_sort(variants.begin(), variants.end(),
                   [](const AlgorithmVariant& a, const AlgorithmVariant& b) {
                     return a.cost < b.cost;
                   });
  for (std::size_t i = 0; i < variants.size(); ++i)
    variants[i].id = "algorithm" + std::to_string(i);
  return variants;
}

// Number of distinct parenthesizations among the variants (kernel order
// ignored); the Catalan number C(L-1) when the variants are complete.
inline std::size_t count_parenthesizations(std::span<const AlgorithmVariant> variants) {
  std::set<std::vector<ProductStep>> trees;
  for (const auto& v : variants) {
    std::vector<ProductStep> key = v.steps;
    std::sort(key.begin(), key.end());
    trees.insert(std::move(key));
  }
  return trees.size();
}

// Relative FLOPs score: RF_i = (F_i - F_min) / F_min.
inline std::vector<double> relative_flops(std::span<const long long> costs) {
  if (costs.empty()) throw Error("relative FLOPs of an empty cost list");
  for (long long f : costs)
    if (f <= 0) throw Error("FLOP counts must be positive");
  const long long fmin = *std::min_element(costs.begin(), costs.end());
  std::vector<double> rf;
  rf.reserve(costs.size());
  for (long long f : costs)
    rf.push_back(static_cast<double>(f - fmin) / static_cast<double>(fmin));
  return rf;
}

// Relative time score: RT_i = (T_i - T_min) / T_min.
inline std::vector<double> relative_time(std::span<const double> times) {
  if (times.empty()) throw Error("relative time of an empty list");
  for (double t : times)
    if (!(t > 0.0)) throw Error("execution times must be positive");
  const double tmin = *std::min_element(times.begin(), times.end());
  std::vector<double> rt;
  rt.reserve(times.size());
  for (double t : times) rt.push_back((t - tmin) / tmin);
  return rt;
}

// Candidate set for the measurement loop: every algorithm with the minimum
// FLOP count, plus any other whose single-run relative time is below the
// threshold. Returns sorted indices.
inline std::vector<std::size_t> shortlist(std::span<const long long> flops,
                                          std::span<const double> single_run_times,
                                          double rt_threshold = 1.5) {
  if (flops.size() != single_run_times.size())
    throw Error("shortlist needs one single-run time per algorithm");
  if (flops.empty()) throw Error("shortlist of an empty algorithm list");
  for (long long f : flops)
    if (f <= 0) throw Error("FLOP counts must be positive");
  const long long fmin = *std::min_element(flops.begin(), flops.end());
  const std::vector<double> rt = relative_time(single_run_times);
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < flops.size(); ++i)
    if (flops[i] == fmin || rt[i] < rt_threshold) selected.push_back(i);
  return selected;
}

}  // namespace algorank
