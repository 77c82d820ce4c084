#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/measurements.hpp"

namespace algorank {

// Seven nested ranges from (5,95) down to (35,65); the headline (25,75) sits
// in the middle.
inline std::vector<QuantileRange> default_quantile_family() {
  return {{5, 95}, {10, 90}, {15, 85}, {20, 80}, {25, 75}, {30, 70}, {35, 65}};
}

// Ranges biased toward the left end of the distribution, for machines whose
// frequency scaling produces multi-modal timings.
inline std::vector<QuantileRange> fast_quantile_family() {
  return {{5, 50}, {15, 45}, {20, 40}, {25, 35}};
}

// Accepts "default", "fast", or an explicit "l1,u1;l2,u2;..." list.
inline std::vector<QuantileRange> parse_quantile_set(const std::string& text) {
  if (text == "default") return default_quantile_family();
  if (text == "fast") return fast_quantile_family();

  std::vector<QuantileRange> ranges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(';', pos), text.size());
    const std::string item = text.substr(pos, end - pos);
    const std::size_t comma = item.find(',');
    if (comma == std::string::npos)
      throw ConfigError("quantile set entry must be 'lower,upper': " + item);
    try {
      const double lower = std::stod(item.substr(0, comma));
      const double upper = std::stod(item.substr(comma + 1));
      ranges.emplace_back(lower, upper);
    } catch (const std::invalid_argument&) {
      throw ConfigError("quantile set entry is not numeric: " + item);
    } catch (const std::out_of_range&) {
      throw ConfigError("quantile set entry is out of range: " + item);
    }
    pos = end + 1;
  }
  if (ranges.empty()) throw ConfigError("quantile set is empty");
  return ranges;
}

}  // namespace algorank
