#include "cantor/tree.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "cantor/errors.hpp"

namespace cantor {

FiniteTree::FiniteTree(int depth) : depth_(depth) {
  if (depth < 0 || depth > BinaryWord::kMaxLen) {
    throw std::invalid_argument("tree depth out of range");
  }
  levels_.resize(static_cast<std::size_t>(depth) + 1);
  levels_[0].push_back(0);  // root
}

FiniteTree FiniteTree::full(int depth) {
  FiniteTree t(depth);
  for (int d = 1; d <= depth; ++d) {
    auto& level = t.levels_[static_cast<std::size_t>(d)];
    level.resize(std::uint64_t{1} << d);
    for (std::uint64_t v = 0; v < level.size(); ++v) level[v] = v;
  }
  return t;
}

bool FiniteTree::contains(BinaryWord w) const {
  if (w.len < 0 || w.len > depth_) return false;
  const auto& level = levels_[static_cast<std::size_t>(w.len)];
  return std::binary_search(level.begin(), level.end(), w.bits);
}

std::uint64_t FiniteTree::count_at(int level) const {
  if (level < 0 || level > depth_) return 0;
  return levels_[static_cast<std::size_t>(level)].size();
}

std::uint64_t FiniteTree::total_nodes() const {
  std::uint64_t n = 0;
  for (const auto& level : levels_) n += level.size();
  return n;
}

void FiniteTree::add(BinaryWord w) {
  if (w.len <= 0 || w.len > depth_) throw OutOfRange("node outside tree depth");
  auto& level = levels_[static_cast<std::size_t>(w.len)];
  assert(level.empty() || level.back() < w.bits);
  assert(contains(w.parent()));
  level.push_back(w.bits);
}

std::vector<BinaryWord> FiniteTree::members() const {
  std::vector<BinaryWord> out;
  out.reserve(total_nodes());
  for (int d = 0; d <= depth_; ++d) {
    for (std::uint64_t v : levels_[static_cast<std::size_t>(d)]) out.push_back({v, d});
  }
  return out;
}

namespace {

// Breadth-first decode shared by the ternary and 4-ary codings.  NextDigit is
// called once per extendible node, in length-lexicographic order.
template <typename NextDigit>
DecodeReceipt decode_impl(NextDigit&& next, int depth, bool four_ary) {
  DecodeReceipt r{FiniteTree(depth)};
  for (int d = 0; d < depth; ++d) {
    // Copy: FiniteTree::add appends to the next level only, but the loop
    // below must iterate a stable view of the current one.
    const std::vector<std::uint64_t> current = r.tree.level(d);
    for (std::uint64_t value : current) {
      const BinaryWord node{value, d};
      const int digit = next();
      if (digit < 0 || digit >= (four_ary ? 4 : 3)) {
        throw std::invalid_argument("digit out of alphabet for tree code");
      }
      r.extendible_order.push_back(node);
      if (digit == 0 || digit == 2) r.tree.add(node.child(0));
      if (digit == 1 || digit == 2) r.tree.add(node.child(1));
    }
  }
  r.digits_consumed = r.extendible_order.size();
  return r;
}

template <bool FourAry>
DecodeReceipt decode_word(const CodeWord& code, int depth) {
  if (code.alphabet_size() != (FourAry ? 4 : 3)) {
    throw std::invalid_argument(FourAry ? "expected a 4-ary code" : "expected a ternary code");
  }
  std::size_t pos = 0;
  return decode_impl(
      [&] {
        if (pos >= code.size()) throw NeedMoreCode(pos + 1);
        return static_cast<int>(code[pos++]);
      },
      depth, FourAry);
}

template <bool FourAry>
DecodeReceipt decode_stream(const DigitStream& source, int depth) {
  const DigitStream digits = source.with_alphabet(FourAry ? 4 : 3);
  DigitCursor cursor(digits);
  return decode_impl([&] { return cursor.next(); }, depth, FourAry);
}

}  // namespace

DecodeReceipt decode_tree3(const CodeWord& code, int depth) {
  return decode_word<false>(code, depth);
}

DecodeReceipt decode_tree3(const DigitStream& source, int depth) {
  return decode_stream<false>(source, depth);
}

DecodeReceipt decode_tree4(const CodeWord& code, int depth) {
  return decode_word<true>(code, depth);
}

DecodeReceipt decode_tree4(const DigitStream& source, int depth) {
  return decode_stream<true>(source, depth);
}

CodeWord select_path(const FiniteTree& tree, const CodeWord& selector_bits, int n) {
  if (n > tree.depth()) throw OutOfRange("path length exceeds tree depth");
  if (selector_bits.alphabet_size() != 2 || selector_bits.size() < static_cast<std::size_t>(n)) {
    throw std::invalid_argument("selector must supply at least n bits");
  }
  CodeWord out(2);
  BinaryWord cur = BinaryWord::root();
  for (int k = 0; k < n; ++k) {
    const bool left = tree.contains(cur.child(0));
    const bool right = tree.contains(cur.child(1));
    int bit;
    if (left && right) {
      bit = selector_bits[static_cast<std::size_t>(k)];
    } else if (left) {
      bit = 0;
    } else if (right) {
      bit = 1;
    } else {
      throw DeadEnd();
    }
    out.push_back(bit);
    cur = cur.child(bit);
  }
  return out;
}

mpq_class cover_measure(const FiniteTree& tree, int n) {
  if (n < 0 || n > tree.depth()) throw OutOfRange("level exceeds tree depth");
  mpz_class den = mpz_class(1) << static_cast<unsigned long>(n);
  mpq_class q(mpz_class(tree.count_at(n)), den);
  q.canonicalize();
  return q;
}

CodeWord tree_code_containing(BinaryWord y, const DigitStream& aux, int depth) {
  if (y.len < depth) throw std::invalid_argument("y shorter than requested depth");
  const DigitStream off_path = aux.with_alphabet(3);
  const DigitStream on_path = aux.with_alphabet(2);
  CodeWord code(3);
  FiniteTree tree(depth);
  std::uint64_t consumed = 0;
  for (int d = 0; d < depth; ++d) {
    const std::vector<std::uint64_t> current = tree.level(d);
    for (std::uint64_t value : current) {
      const BinaryWord node{value, d};
      int digit;
      if (node == y.prefix(d)) {
        const int direction = y.digit(d);
        digit = on_path.digit_at(consumed) ? 2 : direction;
      } else {
        digit = off_path.digit_at(consumed);
      }
      ++consumed;
      code.push_back(digit);
      if (digit == 0 || digit == 2) tree.add(node.child(0));
      if (digit == 1 || digit == 2) tree.add(node.child(1));
    }
  }
  return code;
}

}  // namespace cantor
