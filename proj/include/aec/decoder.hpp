#ifndef AEC_DECODER_HPP
#define AEC_DECODER_HPP

#include <optional>
#include <vector>

#include "aec/codebook.hpp"
#include "aec/word.hpp"

namespace aec {

enum class DecodeError {
  None,
  NoTau,
  EmptyList,
  NoDisambigPair,
  NoCondorcet,
};

const char* decode_error_name(DecodeError e);

// One evaluated tournament pair, canonical order m1 < m2.
struct PairRecord {
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  std::uint32_t k1 = 0;
  std::uint32_t k2 = 0;
  std::uint32_t v_size = 0;
  std::uint64_t winner = 0;
};

struct DecodeOutcome {
  DecodeError error = DecodeError::None;
  std::uint64_t message = 0;  // valid when error == None
  std::uint32_t tau = 0;      // valid unless error == NoTau
  std::vector<std::uint64_t> list;
  std::vector<PairRecord> pairwise;
};

// Smallest t whose prefix holds `target` unerased symbols.
std::optional<std::uint32_t> compute_tau(const ReceivedWord& y,
                                         std::uint32_t target);

// Messages whose unerased prefix mismatch count is strictly below the list
// threshold.
std::vector<std::uint64_t> build_list(const Codebook& cb,
                                      const ReceivedWord& y,
                                      std::uint32_t tau);

struct Disambiguation {
  std::uint32_t k1 = 0;
  std::uint32_t k2 = 0;
  IndexSet v;
};

// First (k1,k2), k1 != k2, in lexicographic order whose unerased suffix
// intersection reaches the disambiguation threshold.
std::optional<Disambiguation> disambiguation_set(const Codebook& cb,
                                                 const ReceivedWord& y,
                                                 std::uint32_t tau,
                                                 std::uint64_t m1,
                                                 std::uint64_t m2);

// Splits V into agreement/disagreement halves and returns the larger
// (agreement set on ties) together with which one it is.
std::pair<IndexSet, bool> split_and_pick(const Codebook& cb, std::uint64_t m1,
                                         std::uint64_t m2, const IndexSet& v);

// Likelihood-ratio rule in log domain; ties go to m2.
bool beats(const Codebook& cb, const ReceivedWord& y, std::uint64_t m1,
           std::uint64_t m2, std::uint32_t k1, std::uint32_t k2,
           const IndexSet& v_chosen);

// The four-stage decoder: prefix cut, list, disambiguation, Condorcet winner.
DecodeOutcome decode(const Codebook& cb, const ReceivedWord& y);

}  // namespace aec

#endif
