#include "aec/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace aec {

bool valid_index_set(const IndexSet& s, std::uint32_t n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

Word Word::parse(const std::string& s) {
  std::vector<Bit> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("word: bad character '" + std::string(1, c) +
                                  "'");
    bits.push_back(static_cast<Bit>(c - '0'));
  }
  return Word(std::move(bits));
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (Bit b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

Word Word::xor_with(const Word& other) const {
  if (other.size() != size())
    throw std::invalid_argument("xor: length mismatch");
  std::vector<Bit> out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i)
    out[i] = bits_[i] ^ other.bits_[i];
  return Word(std::move(out));
}

ReceivedWord ReceivedWord::parse(const std::string& s) {
  ReceivedWord y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case '0': y.symbols_[i] = Symbol::Zero; break;
      case '1': y.symbols_[i] = Symbol::One; break;
      case 'e': y.symbols_[i] = Symbol::Erased; break;
      default:
        throw std::invalid_argument("received word: bad character '" +
                                    std::string(1, s[i]) + "'");
    }
  }
  return y;
}

ReceivedWord ReceivedWord::from_word(const Word& w) {
  ReceivedWord y(w.size());
  for (std::uint32_t i = 1; i <= w.size(); ++i)
    y.set(i, static_cast<Symbol>(w.at(i)));
  return y;
}

std::string ReceivedWord::to_string() const {
  std::string s;
  s.reserve(symbols_.size());
  for (Symbol sym : symbols_) {
    switch (sym) {
      case Symbol::Zero: s.push_back('0'); break;
      case Symbol::One: s.push_back('1'); break;
      case Symbol::Erased: s.push_back('e'); break;
    }
  }
  return s;
}

std::uint32_t ReceivedWord::erasure_count() const {
  return static_cast<std::uint32_t>(
      std::count(symbols_.begin(), symbols_.end(), Symbol::Erased));
}

std::uint32_t hamming_distance(const Word& a, const Word& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.bits()[i] != b.bits()[i]) ++d;
  return d;
}

Word restrict(const Word& w, const IndexSet& t) {
  std::vector<Bit> out;
  out.reserve(t.size());
  for (std::uint32_t pos : t) {
    if (pos < 1 || pos > w.size())
      throw std::out_of_range("restrict: index out of range");
    out.push_back(w.at(pos));
  }
  return Word(std::move(out));
}

IndexSet unerased_positions(const ReceivedWord& y, std::uint32_t lo,
                            std::uint32_t hi) {
  IndexSet out;
  for (std::uint32_t pos = lo; pos <= hi && pos <= y.size(); ++pos)
    if (!y.erased(pos)) out.push_back(pos);
  return out;
}

std::uint32_t mismatch_count(const ReceivedWord& y, const Word& w,
                             const IndexSet& positions) {
  std::uint32_t d = 0;
  for (std::uint32_t pos : positions)
    if (!y.erased(pos) && y.bit(pos) != w.at(pos)) ++d;
  return d;
}

}  // namespace aec
