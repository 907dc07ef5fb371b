#include "cantor/word.hpp"

#include <bit>
#include <stdexcept>

namespace cantor {

CodeWord::CodeWord(int alphabet_size, std::vector<std::uint8_t> digits)
    : alphabet_(static_cast<std::uint8_t>(alphabet_size)), digits_(std::move(digits)) {
  if (alphabet_size < 2 || alphabet_size > 4) {
    throw std::invalid_argument("alphabet size must be 2, 3, or 4");
  }
  for (std::uint8_t d : digits_) {
    if (d >= alphabet_) throw std::invalid_argument("digit out of alphabet");
  }
}

CodeWord CodeWord::parse(int alphabet_size, std::string_view digits) {
  std::vector<std::uint8_t> ds;
  ds.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("non-digit character in code");
    ds.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return CodeWord(alphabet_size, std::move(ds));
}

void CodeWord::push_back(int digit) {
  if (digit < 0 || digit >= alphabet_) throw std::invalid_argument("digit out of alphabet");
  digits_.push_back(static_cast<std::uint8_t>(digit));
}

std::string CodeWord::str() const {
  std::string s;
  s.reserve(digits_.size());
  for (std::uint8_t d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

std::string BinaryWord::str() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) s.push_back(static_cast<char>('0' + digit(j)));
  return s;
}

std::uint64_t index_of(BinaryWord word) {
  return ((std::uint64_t{1} << word.len) - 1) + word.bits;
}

std::uint64_t index_of(const CodeWord& word) {
  return index_of(to_binary_word(word));
}

BinaryWord word_at(std::uint64_t index) {
  const std::uint64_t n = index + 1;
  const int len = 63 - std::countl_zero(n);
  if (len > BinaryWord::kMaxLen) throw OutOfRange("word index too large");
  return {n - (std::uint64_t{1} << len), len};
}

CodeWord to_codeword(BinaryWord word) {
  CodeWord w(2);
  for (int j = 0; j < word.len; ++j) w.push_back(word.digit(j));
  return w;
}

BinaryWord to_binary_word(const CodeWord& word) {
  if (word.alphabet_size() != 2) {
    throw std::invalid_argument("expected a binary word");
  }
  if (word.size() > BinaryWord::kMaxLen) throw OutOfRange("binary word too long");
  BinaryWord w = BinaryWord::root();
  for (std::uint8_t d : word) w = w.child(d);
  return w;
}

std::uint64_t pair_index(std::uint64_t n, std::uint64_t k) {
  if (n >= 63 || k >= (std::uint64_t{1} << (62 - n))) {
    throw OutOfRange("pair index overflow");
  }
  return ((std::uint64_t{1} << n) * (2 * k + 1)) - 1;
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t i) {
  const std::uint64_t v = i + 1;
  const int n = std::countr_zero(v);
  const std::uint64_t odd = v >> n;
  return {static_cast<std::uint64_t>(n), (odd - 1) / 2};
}

CodeWord join_columns(const std::vector<CodeWord>& columns) {
  std::uint64_t length = 0;
  for (std::size_t n = 0; n < columns.size(); ++n) {
    if (columns[n].alphabet_size() != 2) {
      throw std::invalid_argument("columns must be binary");
    }
    if (!columns[n].empty()) {
      length = std::max(length, pair_index(n, columns[n].size() - 1) + 1);
    }
  }
  std::vector<std::uint8_t> out(length, 0);
  for (std::size_t n = 0; n < columns.size(); ++n) {
    for (std::size_t k = 0; k < columns[n].size(); ++k) {
      out[pair_index(n, k)] = columns[n][k];
    }
  }
  return CodeWord(2, std::move(out));
}

std::vector<CodeWord> split_columns(const CodeWord& word, std::size_t n_columns) {
  if (word.alphabet_size() != 2) throw std::invalid_argument("expected a binary word");
  std::vector<CodeWord> cols(n_columns, CodeWord(2));
  for (std::size_t n = 0; n < n_columns; ++n) {
    for (std::uint64_t k = 0;; ++k) {
      const std::uint64_t pos = pair_index(n, k);
      if (pos >= word.size()) break;
      cols[n].push_back(word[pos]);
    }
  }
  return cols;
}

}  // namespace cantor
