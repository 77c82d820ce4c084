#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "algorank/measurements.hpp"

namespace algorank {

// Three-way outcome of comparing two measurement sets; Faster/Slower refer to
// the first argument.
enum class ComparisonOutcome { Faster, Slower, Equivalent };

inline ComparisonOutcome flip(ComparisonOutcome out) {
  switch (out) {
    case ComparisonOutcome::Faster: return ComparisonOutcome::Slower;
    case ComparisonOutcome::Slower: return ComparisonOutcome::Faster;
    default: return ComparisonOutcome::Equivalent;
  }
}

inline const char* to_string(ComparisonOutcome out) {
  switch (out) {
    case ComparisonOutcome::Faster: return "faster";
    case ComparisonOutcome::Slower: return "slower";
    default: return "equivalent";
  }
}

// Quantile-overlap comparison: a is faster iff its upper quantile lies
// strictly below b's lower quantile, and vice versa; any overlap of the
// [lower, upper] quantile intervals makes the two equivalent. Ties on the
// boundary are equivalence because both tests use strict <.
inline ComparisonOutcome compare(const MeasurementSet& a, const MeasurementSet& b,
                                 const QuantileRange& range) {
  std::vector<double> sa(a.samples().begin(), a.samples().end());
  std::vector<double> sb(b.samples().begin(), b.samples().end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double a_low = quantile_sorted(sa, range.lower);
  const double a_up = quantile_sorted(sa, range.upper);
  const double b_low = quantile_sorted(sb, range.lower);
  const double b_up = quantile_sorted(sb, range.upper);
  if (a_up < b_low) return ComparisonOutcome::Faster;
  if (b_up < a_low) return ComparisonOutcome::Slower;
  return ComparisonOutcome::Equivalent;
}

}  // namespace algorank
