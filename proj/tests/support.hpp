// Test-only oracles and generators. Nothing here calls the code under test
// except to build Instance values.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pssp/ssp_core.hpp"

namespace pssp::testing {

// Histogram of subset sums by walking every bitmask directly.
inline std::map<std::int64_t, std::uint64_t> brute_force_histogram(
    const std::vector<std::int64_t>& elements) {
  std::map<std::int64_t, std::uint64_t> hist;
  const std::uint64_t limit = std::uint64_t{1} << elements.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (mask >> i & 1) sum += elements[i];
    }
    ++hist[sum];
  }
  return hist;
}

// Achievable sums of each prefix, by brute force: P_0..P_N.
inline std::vector<std::set<std::int64_t>> brute_force_layers(
    const std::vector<std::int64_t>& elements) {
  std::vector<std::set<std::int64_t>> layers;
  for (std::size_t k = 0; k <= elements.size(); ++k) {
    std::vector<std::int64_t> prefix(elements.begin(), elements.begin() + static_cast<long>(k));
    std::set<std::int64_t> sums;
    for (const auto& [s, c] : brute_force_histogram(prefix)) sums.insert(s);
    layers.push_back(std::move(sums));
  }
  return layers;
}

inline std::vector<std::int64_t> random_elements(std::mt19937_64& rng, std::size_t max_n,
                                                 std::int64_t max_value) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_int_distribution<std::int64_t> value(1, max_value);
  std::vector<std::int64_t> elements(size(rng));
  for (auto& e : elements) e = value(rng);
  return elements;
}

inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n,
                                std::int64_t max_value) {
  return Instance::parse(random_elements(rng, max_n, max_value));
}

}  // namespace pssp::testing
