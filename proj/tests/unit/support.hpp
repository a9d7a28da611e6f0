#pragma once

// Shared helpers for the unit tests: seeded generators of random words and
// eventually periodic points.

#include <cstdint>
#include <random>

#include "ccslab/bitseq.hpp"

namespace testing_support {

inline ccslab::BinaryWord random_word(std::mt19937_64& rng, std::size_t max_len, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::bernoulli_distribution coin(0.5);
  ccslab::BinaryWord w;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.push_back(coin(rng) ? 1 : 0);
  return w;
}

inline ccslab::CantorPoint random_point(std::mt19937_64& rng, std::size_t max_prefix = 6, std::size_t max_period = 4) {
  return ccslab::CantorPoint(random_word(rng, max_prefix), random_word(rng, max_period, 1));
}

/// First n bits of prefix ⌢ period^∞ computed without canonicalization.
inline std::vector<int> unroll(const ccslab::BinaryWord& prefix, const ccslab::BinaryWord& period, std::size_t n) {
  std::vector<int> bits;
  for (std::size_t i = 0; i < n; ++i) {
    bits.push_back(i < prefix.size() ? prefix[i] : period[(i - prefix.size()) % period.size()]);
  }
  return bits;
}

}  // namespace testing_support
