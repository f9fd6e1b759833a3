#ifndef AEC_CODEBOOK_HPP
#define AEC_CODEBOOK_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aec/word.hpp"

namespace aec {

inline constexpr std::uint64_t kDefaultMaxMessages = 1ULL << 12;

// Parameters governing construction and decoding of one code.
struct CodeParams {
  std::uint32_t n = 0;          // blocklength
  double p = 0.0;               // adversary erasure fraction
  double epsilon = 0.0;         // rate slack
  double rate = 0.0;            // R = 1 - p - epsilon
  std::uint64_t num_messages = 0;
  std::uint32_t num_levels = 0;       // K
  std::vector<double> noise_levels;   // q_1..q_K, strictly increasing
  std::uint32_t list_threshold = 0;   // ceil(n^{3/4})
  std::uint32_t disambig_threshold = 0;  // ceil(eps*n / (4(K^2-K)))

  std::uint32_t erasure_budget() const {
    return static_cast<std::uint32_t>(p * n);
  }
  bool operator==(const CodeParams&) const = default;
};

// K = max(2, floor(log2(n)/4)), q_k = 2^{k-1} n^{-1/2}, M = floor(2^{nR})
// subject to the override / cap. Throws std::invalid_argument on bad inputs
// and std::domain_error when q_K >= 1/2 or the rate is not in (0,1).
CodeParams derive_params(std::uint32_t n, double p, double epsilon,
                         std::optional<std::uint64_t> num_messages_override =
                             std::nullopt,
                         std::uint64_t max_messages = kDefaultMaxMessages);

// One coherence check: the number of positions of T where m and m2 share a
// noise level, against the bound (|T|/K)(1+eta1).
struct CoherenceReport {
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  IndexSet t;
  std::uint64_t stat = 0;
  double bound = 0.0;
  bool coherent = false;
};

struct CoherenceResult {
  bool passed = false;
  std::uint64_t checked = 0;
  std::vector<CoherenceReport> violations;
};

struct ListDecodabilityWitness {
  IndexSet t_prime;
  Word center;
  std::vector<std::uint64_t> messages;
};

struct ListDecodabilityResult {
  bool passed = false;
  std::uint64_t checked = 0;
  std::optional<ListDecodabilityWitness> witness;
};

// Base codewords u(1..M) plus per-message K-way index partitions, fully
// determined by (params, seed). Immutable after construction.
class Codebook {
 public:
  static Codebook generate(const CodeParams& params, std::uint64_t seed);

  // Direct construction from parts; validates lengths and level ranges.
  // levels[m-1][i-1] holds the 1-based noise level of index i for message m.
  static Codebook from_parts(CodeParams params, std::vector<Word> base,
                             std::vector<std::vector<std::uint8_t>> levels,
                             std::uint64_t seed);

  const CodeParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t num_messages() const { return base_.size(); }

  const Word& base_codeword(std::uint64_t m) const { return base_[m - 1]; }
  // Noise level k in [1..K] of index i for message m.
  std::uint32_t level_of(std::uint64_t m, std::uint32_t i) const {
    return levels_[m - 1][i - 1];
  }
  // S(m,k), built on demand.
  IndexSet partition(std::uint64_t m, std::uint32_t k) const;

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static Codebook load(std::istream& in);
  static Codebook load_file(const std::string& path);

 private:
  CodeParams params_;
  std::uint64_t seed_ = 0;
  std::vector<Word> base_;
  std::vector<std::vector<std::uint8_t>> levels_;
};

// Sum_k |S(m,k) n S(m2,k) n T|.
std::uint64_t coherence_stat(const Codebook& cb, std::uint64_t m,
                             std::uint64_t m2, const IndexSet& t);

// Exhaustive mode enumerates every pair and every T with |T| >= ceil(eta2*n),
// refusing instances whose check count exceeds max_checks. Sampled mode draws
// num_samples random (pair, T) checks with |T| = ceil(eta2*n).
CoherenceResult validate_coherence_exhaustive(const Codebook& cb, double eta1,
                                              double eta2,
                                              std::uint64_t max_checks);
CoherenceResult validate_coherence_sampled(const Codebook& cb, double eta1,
                                           double eta2,
                                           std::uint64_t num_samples,
                                           std::uint64_t seed);

// Brute force over all restrictions T' of size w_u and all ball centers.
// Fails with a witness if some radius-w_e ball contains >= s restricted
// codewords. Refuses instances above max_ops.
ListDecodabilityResult validate_list_decodability(const Codebook& cb,
                                                  std::uint32_t w_u,
                                                  std::uint32_t w_e,
                                                  std::uint64_t s,
                                                  std::uint64_t max_ops);

}  // namespace aec

#endif
