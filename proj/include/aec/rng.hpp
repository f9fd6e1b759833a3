#ifndef AEC_RNG_HPP
#define AEC_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace aec {

// Role labels for deriving disjoint random sub-streams from one master seed.
// Encoder and adversary randomness must never share a stream.
enum class Role : std::uint64_t {
  Codebook = 1,
  BaseWords = 2,
  Partition = 3,
  Message = 4,
  Encoder = 5,
  Adversary = 6,
  Sweep = 7,
  Validation = 8,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a sub-stream seed from (seed, part, part, ...). Stable across
// platforms so any trial can be replayed from its ids alone.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t p : parts) h = splitmix64(h ^ p);
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t seed, Role role,
                                std::uint64_t id = 0) {
  return std::mt19937_64(
      derive_seed(seed, {static_cast<std::uint64_t>(role), id}));
}

}  // namespace aec

#endif
