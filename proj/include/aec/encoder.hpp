#ifndef AEC_ENCODER_HPP
#define AEC_ENCODER_HPP

#include <random>
#include <utility>

#include "aec/codebook.hpp"
#include "aec/word.hpp"

namespace aec {

struct NoiseRealization {
  Word z;
  std::uint32_t weight = 0;
};

// Independent Bernoulli(q_k) draw at each position i with i in S(m,k).
NoiseRealization sample_noise(const Codebook& cb, std::uint64_t m,
                              std::mt19937_64& rng);

// X = u(m) xor Z. The realization is returned for white-box checks; the
// channel only ever sees the word.
std::pair<Word, NoiseRealization> encode_stochastic(const Codebook& cb,
                                                    std::uint64_t m,
                                                    std::mt19937_64& rng);

// Returns u(m) exactly.
const Word& encode_deterministic(const Codebook& cb, std::uint64_t m);

}  // namespace aec

#endif
