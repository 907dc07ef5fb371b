#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cantor/errors.hpp"

namespace cantor {

/// Finite word over an alphabet of size 2, 3, or 4.  The universal currency
/// for codes of closed sets, functions, and measures.
class CodeWord {
 public:
  CodeWord() : alphabet_(2) {}
  explicit CodeWord(int alphabet_size, std::vector<std::uint8_t> digits = {});

  /// Parses "0212" style digit strings.
  static CodeWord parse(int alphabet_size, std::string_view digits);

  int alphabet_size() const { return alphabet_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  void push_back(int digit);
  std::string str() const;

  auto begin() const { return digits_.begin(); }
  auto end() const { return digits_.end(); }

  friend bool operator==(const CodeWord&, const CodeWord&) = default;

 private:
  std::uint8_t alphabet_;
  std::vector<std::uint8_t> digits_;
};

/// Binary word packed into a machine word, read root-to-leaf: digit j sits at
/// bit (len-1-j).  Used for tree nodes and paths; length is capped so that
/// length-lexicographic indices fit in 64 bits.
struct BinaryWord {
  std::uint64_t bits = 0;
  int len = 0;

  static constexpr int kMaxLen = 62;

  static BinaryWord root() { return {}; }

  BinaryWord child(int digit) const {
    return {(bits << 1) | static_cast<std::uint64_t>(digit & 1), len + 1};
  }
  BinaryWord parent() const { return {bits >> 1, len - 1}; }
  BinaryWord prefix(int k) const { return {bits >> (len - k), k}; }
  int digit(int j) const { return static_cast<int>((bits >> (len - 1 - j)) & 1); }
  int last() const { return static_cast<int>(bits & 1); }
  bool is_root() const { return len == 0; }

  std::string str() const;

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  /// Length-lexicographic order.
  friend std::strong_ordering operator<=>(const BinaryWord& a, const BinaryWord& b) {
    if (a.len != b.len) return a.len <=> b.len;
    return a.bits <=> b.bits;
  }
};

/// Length-lexicographic index of a binary word; the empty word has index 0.
std::uint64_t index_of(BinaryWord word);
std::uint64_t index_of(const CodeWord& word);

/// Inverse of index_of; |word_at(i)| = floor(log2(i+1)).
BinaryWord word_at(std::uint64_t index);

CodeWord to_codeword(BinaryWord word);
BinaryWord to_binary_word(const CodeWord& word);

/// Pairing bijection <n,k> = 2^n (2k+1) - 1 between pairs and naturals.
std::uint64_t pair_index(std::uint64_t n, std::uint64_t k);
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t i);

/// Interleaves binary columns into one binary word, placing column n bit k at
/// position <n,k>.  Positions not covered by any column are zero-filled; the
/// result extends to the highest covered position.
CodeWord join_columns(const std::vector<CodeWord>& columns);

/// Extracts the first n_columns columns of a binary word (inverse of
/// join_columns up to the available length).
std::vector<CodeWord> split_columns(const CodeWord& word, std::size_t n_columns);

}  // namespace cantor
