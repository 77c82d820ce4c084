#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Small deterministic RNG helpers. The mt19937_64 output sequence is fixed by
// the standard, but the standard distributions are not; everything that must
// reproduce byte-identically across toolchains is derived here from raw
// generator output instead.

namespace algorank {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable seed for a (campaign seed, iteration, algorithm index) triple.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = splitmix64(base);
  s = splitmix64(s ^ (a + 0x9e3779b97f4a7c15ULL));
  s = splitmix64(s ^ (b + 0x7f4a7c159e3779b9ULL));
  return s;
}

// Unbiased draw from [0, n) by rejection below 2^64 - (2^64 mod n).
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= threshold) return r % n;
  }
}

// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; avoids the implementation-defined
// std::normal_distribution.
inline double gaussian(std::mt19937_64& gen) {
  const double u1 = 1.0 - unit_double(gen);  // (0, 1]
  const double u2 = unit_double(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <typename T>
void fisher_yates(std::vector<T>& values, std::mt19937_64& gen) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(gen, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace algorank
