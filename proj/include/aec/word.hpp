#ifndef AEC_WORD_HPP
#define AEC_WORD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace aec {

using Bit = std::uint8_t;  // 0 or 1

// Channel output symbol: the input bit or an erasure.
enum class Symbol : std::uint8_t { Zero = 0, One = 1, Erased = 2 };

// Ordered set of 1-based positions, strictly increasing.
using IndexSet = std::vector<std::uint32_t>;

bool valid_index_set(const IndexSet& s, std::uint32_t n);

// Fixed-length binary word. Positions are 1-based in all interfaces.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t n) : bits_(n, 0) {}
  explicit Word(std::vector<Bit> bits) : bits_(std::move(bits)) {}

  // Parses a {0,1}-string, position 1 leftmost. Throws on other characters.
  static Word parse(const std::string& s);
  std::string to_string() const;

  std::size_t size() const { return bits_.size(); }
  Bit at(std::uint32_t pos) const { return bits_[pos - 1]; }
  void set(std::uint32_t pos, Bit b) { bits_[pos - 1] = b; }
  const std::vector<Bit>& bits() const { return bits_; }

  Word xor_with(const Word& other) const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Bit> bits_;
};

// Ternary received word over {0, 1, erased}.
class ReceivedWord {
 public:
  ReceivedWord() = default;
  explicit ReceivedWord(std::size_t n) : symbols_(n, Symbol::Erased) {}

  // Parses a string over {0,1,e}, 'e' marking an erasure.
  static ReceivedWord parse(const std::string& s);
  static ReceivedWord from_word(const Word& w);
  std::string to_string() const;

  std::size_t size() const { return symbols_.size(); }
  Symbol at(std::uint32_t pos) const { return symbols_[pos - 1]; }
  void set(std::uint32_t pos, Symbol s) { symbols_[pos - 1] = s; }
  void erase_at(std::uint32_t pos) { symbols_[pos - 1] = Symbol::Erased; }

  bool erased(std::uint32_t pos) const {
    return symbols_[pos - 1] == Symbol::Erased;
  }
  // Bit value at an unerased position.
  Bit bit(std::uint32_t pos) const {
    return static_cast<Bit>(symbols_[pos - 1]);
  }

  std::uint32_t erasure_count() const;

  bool operator==(const ReceivedWord&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

// Number of positions where two equal-length words differ.
std::uint32_t hamming_distance(const Word& a, const Word& b);

// Length-|t| word whose i-th entry is the (t)_i-th entry of w.
Word restrict(const Word& w, const IndexSet& t);

// Positions in [lo..hi] whose symbol is unerased.
IndexSet unerased_positions(const ReceivedWord& y, std::uint32_t lo,
                            std::uint32_t hi);

// Disagreements between y and w on the given positions, erased ones skipped.
std::uint32_t mismatch_count(const ReceivedWord& y, const Word& w,
                             const IndexSet& positions);

}  // namespace aec

#endif
