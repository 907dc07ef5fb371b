#include <doctest.h>

#include <cstdint>
#include <vector>

#include "cantor/word.hpp"

using namespace cantor;

TEST_CASE("length-lex enumeration starts epsilon, 0, 1, 00") {
  CHECK(index_of(CodeWord(2)) == 0);
  CHECK(index_of(CodeWord::parse(2, "1")) == 2);
  CHECK(index_of(CodeWord::parse(2, "00")) == 3);

  CHECK(word_at(0) == BinaryWord::root());
  CHECK(word_at(1).str() == "0");
  CHECK(word_at(6).str() == "11");
}

TEST_CASE("word_at length is floor(log2(i+1))") {
  for (std::uint64_t i : {0ull, 1ull, 2ull, 3ull, 6ull, 7ull, 14ull, 15ull, 1023ull, 1024ull}) {
    int len = 0;
    while ((std::uint64_t{2} << len) <= i + 1) ++len;
    CHECK(word_at(i).len == len);
  }
}

TEST_CASE("round trip index_of(word_at(i)) over the first 1e5 indices") {
  for (std::uint64_t i = 0; i < 100000; ++i) {
    REQUIRE(index_of(word_at(i)) == i);
  }
}

TEST_CASE("index_of is strictly monotone in length-lex order") {
  std::uint64_t prev = index_of(word_at(0));
  for (std::uint64_t i = 1; i < 5000; ++i) {
    const std::uint64_t cur = index_of(word_at(i));
    CHECK(prev < cur);
    CHECK(word_at(i - 1) < word_at(i));
    prev = cur;
  }
}

TEST_CASE("index_of rejects non-binary words") {
  CHECK_THROWS(index_of(CodeWord::parse(3, "012")));
}

TEST_CASE("code words validate digits against the alphabet") {
  CHECK_THROWS(CodeWord::parse(2, "02"));
  CHECK_THROWS(CodeWord(5));
  CodeWord w(3);
  CHECK_THROWS(w.push_back(3));
  w.push_back(2);
  CHECK(w.str() == "2");
}

TEST_CASE("pairing matches 2^n(2k+1)-1 for n,k <= 3") {
  // Table evaluated by hand from the closed form.
  const std::uint64_t expected[4][4] = {
      {0, 2, 4, 6}, {1, 5, 9, 13}, {3, 11, 19, 27}, {7, 23, 39, 55}};
  for (std::uint64_t n = 0; n < 4; ++n) {
    for (std::uint64_t k = 0; k < 4; ++k) {
      CHECK(pair_index(n, k) == expected[n][k]);
    }
  }
}

TEST_CASE("pairing is a bijection on an initial segment") {
  std::vector<bool> seen(4096, false);
  for (std::uint64_t i = 0; i < 4096; ++i) {
    const auto [n, k] = unpair_index(i);
    CHECK(pair_index(n, k) == i);
    CHECK(!seen[i]);
    seen[i] = true;
  }
}

TEST_CASE("joining a single column is the identity") {
  const CodeWord c = CodeWord::parse(2, "10110");
  const CodeWord joined = join_columns({c});
  // Column 0 sits at the even positions; the odd gaps are zero-filled.
  const auto cols = split_columns(joined, 1);
  REQUIRE(cols.size() == 1);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(cols[0][k] == c[k]);
}

TEST_CASE("two length-8 columns survive a join/split round trip") {
  const CodeWord a = CodeWord::parse(2, "10110100");
  const CodeWord b = CodeWord::parse(2, "01011110");
  const auto cols = split_columns(join_columns({a, b}), 2);
  REQUIRE(cols.size() == 2);
  REQUIRE(cols[0].size() >= a.size());
  REQUIRE(cols[1].size() >= b.size());
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(cols[0][k] == a[k]);
    CHECK(cols[1][k] == b[k]);
  }
}

TEST_CASE("split then join restores any binary word prefix") {
  const CodeWord w = CodeWord::parse(2, "110100101101001011101");
  const CodeWord back = join_columns(split_columns(w, 8));
  for (std::size_t i = 0; i < std::min(w.size(), back.size()); ++i) {
    CHECK(back[i] == w[i]);
  }
}

TEST_CASE("binary word prefix and digit accessors") {
  const BinaryWord w = to_binary_word(CodeWord::parse(2, "0110"));
  CHECK(w.len == 4);
  CHECK(w.digit(0) == 0);
  CHECK(w.digit(1) == 1);
  CHECK(w.digit(3) == 0);
  CHECK(w.prefix(2).str() == "01");
  CHECK(w.parent().str() == "011");
  CHECK(to_codeword(w).str() == "0110");
}
