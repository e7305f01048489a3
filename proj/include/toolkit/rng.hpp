#pragma once

#include <cstdint>
#include <random>

namespace toolkit {

// All randomness in the toolkit comes from std::mt19937_64. Sub-streams
// (per sample, per triple) are seeded with splitmix64(seed ^ tag, index) so a
// result never depends on how work was split across threads.
using Engine = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Engine substream(uint64_t seed, uint64_t tag, uint64_t index) {
  return Engine(splitmix64(splitmix64(seed ^ (tag * 0x100000001b3ULL)) + index));
}

// uniform in [lo, hi]; rejection sampling so the draw sequence is the same on
// every standard library (std::uniform_int_distribution is not)
inline long draw(Engine& g, long lo, long hi) {
  uint64_t span = uint64_t(hi - lo) + 1;
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x;
  do x = g();
  while (x >= limit);
  return lo + long(x % span);
}

}  // namespace toolkit
