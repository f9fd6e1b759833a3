#include "aec/encoder.hpp"

#include <stdexcept>

namespace aec {

NoiseRealization sample_noise(const Codebook& cb, std::uint64_t m,
                              std::mt19937_64& rng) {
  const CodeParams& cp = cb.params();
  if (m < 1 || m > cb.num_messages())
    throw std::invalid_argument("sample_noise: message out of range");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NoiseRealization nr;
  std::vector<Bit> z(cp.n, 0);
  for (std::uint32_t i = 1; i <= cp.n; ++i) {
    double q = cp.noise_levels[cb.level_of(m, i) - 1];
    if (unit(rng) < q) {
      z[i - 1] = 1;
      ++nr.weight;
    }
  }
  nr.z = Word(std::move(z));
  return nr;
}

std::pair<Word, NoiseRealization> encode_stochastic(const Codebook& cb,
                                                    std::uint64_t m,
                                                    std::mt19937_64& rng) {
  NoiseRealization nr = sample_noise(cb, m, rng);
  Word x = cb.base_codeword(m).xor_with(nr.z);
  return {std::move(x), std::move(nr)};
}

const Word& encode_deterministic(const Codebook& cb, std::uint64_t m) {
  if (m < 1 || m > cb.num_messages())
    throw std::invalid_argument("encode_deterministic: message out of range");
  return cb.base_codeword(m);
}

}  // namespace aec
