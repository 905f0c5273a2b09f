#ifndef QUADLAND_SEEDING_HPP_
#define QUADLAND_SEEDING_HPP_

#include <cstdint>

namespace quadland {

// splitmix64 finalizer; maps (seed, stream) to well-separated generator
// seeds so that e.g. worker 0 and worker 1 never share a sequence.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace streams {
inline constexpr std::uint64_t kInit = 1;
inline constexpr std::uint64_t kActions = 2;
inline constexpr std::uint64_t kShuffle = 3;
inline constexpr std::uint64_t kEvaluation = 4;
inline constexpr std::uint64_t kEnvironmentBase = 1000;
}  // namespace streams

}  // namespace quadland

#endif  // QUADLAND_SEEDING_HPP_
