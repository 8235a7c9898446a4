#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace syscan::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable per-stream seed from the master seed and a list of labels.
inline std::uint64_t stream_seed(std::uint64_t master, std::initializer_list<std::string_view> labels) {
  std::uint64_t h = splitmix64(master);
  for (std::string_view label : labels) {
    std::uint64_t fnv = 0xcbf29ce484222325ULL;
    for (unsigned char ch : label) {
      fnv ^= ch;
      fnv *= 0x100000001b3ULL;
    }
    h = splitmix64(h ^ fnv);
  }
  return h;
}

// std::shuffle and std::uniform_int_distribution are not specified bit-for-bit
// across standard libraries; datasets must be byte-identical everywhere.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = bounded(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace syscan::detail
