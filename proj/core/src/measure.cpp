#include "cantor/measure.hpp"

#include <stdexcept>

#include "cantor/errors.hpp"
#include "cantor/tree.hpp"

namespace cantor {

MeasureCode MeasureCode::uniform_random(const DigitStream& source) {
  MeasureCode m;
  m.source_ = source.with_alphabet(2);
  return m;
}

void MeasureCode::set_column(std::uint64_t index, Column column) {
  for (char c : column.periodic) {
    if (c != '0' && c != '1') throw std::invalid_argument("periodic pattern must be binary");
  }
  for (std::uint8_t b : column.bits) {
    if (b > 1) throw std::invalid_argument("column bits must be binary");
  }
  columns_[index] = std::move(column);
}

int MeasureCode::column_bit(std::uint64_t index, std::uint64_t k) const {
  const auto it = columns_.find(index);
  if (it != columns_.end()) {
    const Column& col = it->second;
    if (col.unknown) throw NeedMoreBits(index);
    if (k < col.bits.size()) return col.bits[k];
    if (!col.periodic.empty()) {
      return col.periodic[(k - col.bits.size()) % col.periodic.size()] - '0';
    }
    throw NeedMoreBits(index);
  }
  if (source_) return source_->digit_at(pair_index(index, k));
  if (default_periodic_ && !default_periodic_->empty()) {
    return (*default_periodic_)[k % default_periodic_->size()] - '0';
  }
  throw NeedMoreBits(index);
}

std::optional<std::uint64_t> MeasureCode::known_bits(std::uint64_t index) const {
  const auto it = columns_.find(index);
  if (it != columns_.end()) {
    const Column& col = it->second;
    if (col.unknown) return 0;
    if (col.periodic.empty()) return col.bits.size();
    return std::nullopt;
  }
  if (source_) return std::nullopt;
  if (default_periodic_ && !default_periodic_->empty()) return std::nullopt;
  return 0;
}

namespace {

// Dyadic value of a finite bit prefix: sum bits[k] 2^{-k-1}.
DyadicRational prefix_value(const std::vector<std::uint8_t>& bits) {
  mpz_class num = 0;
  for (std::uint8_t b : bits) num = (num << 1) + b;
  return DyadicRational::from_scaled(num, static_cast<std::int64_t>(bits.size()));
}

bool all_same(const std::string& pattern, char c) {
  for (char p : pattern) {
    if (p != c) return false;
  }
  return !pattern.empty();
}

}  // namespace

namespace {

std::optional<DyadicRational> exact_column_value(const std::vector<std::uint8_t>& bits,
                                                 const std::string& periodic) {
  if (periodic.empty()) return std::nullopt;
  if (all_same(periodic, '0')) return prefix_value(bits);
  if (all_same(periodic, '1')) {
    // 0.b...b111... = prefix + 2^{-|prefix|}
    return prefix_value(bits) +
           DyadicRational::from_scaled(1, static_cast<std::int64_t>(bits.size()));
  }
  return std::nullopt;
}

}  // namespace

std::optional<DyadicRational> MeasureCode::exact_conditional(std::uint64_t index) const {
  const auto it = columns_.find(index);
  if (it != columns_.end()) {
    const Column& col = it->second;
    if (col.unknown) return std::nullopt;
    return exact_column_value(col.bits, col.periodic);
  }
  if (!source_ && default_periodic_) {
    return exact_column_value({}, *default_periodic_);
  }
  return std::nullopt;
}

DyadicInterval MeasureCode::conditional_interval(std::uint64_t index, unsigned bits) const {
  if (const auto exact = exact_conditional(index)) {
    return DyadicInterval::point(*exact);
  }
  std::vector<std::uint8_t> prefix;
  prefix.reserve(bits);
  for (unsigned k = 0; k < bits; ++k) {
    prefix.push_back(static_cast<std::uint8_t>(column_bit(index, k)));
  }
  const DyadicRational lo = prefix_value(prefix);
  const DyadicRational hi = lo + DyadicRational::from_scaled(1, static_cast<std::int64_t>(bits));
  return DyadicInterval(lo, hi);
}

SupportTree::SupportTree(int depth) : depth_(depth) {
  if (depth < 0 || depth > 26) throw std::invalid_argument("support tree depth out of range");
  status_.resize(static_cast<std::size_t>(depth) + 1);
  for (int d = 0; d <= depth; ++d) {
    status_[static_cast<std::size_t>(d)].assign(std::size_t{1} << d,
                                                static_cast<std::uint8_t>(NodeStatus::Out));
  }
  status_[0][0] = static_cast<std::uint8_t>(NodeStatus::In);
}

NodeStatus SupportTree::status(BinaryWord w) const {
  return static_cast<NodeStatus>(status_[static_cast<std::size_t>(w.len)][w.bits]);
}

void SupportTree::set_status(BinaryWord w, NodeStatus s) {
  status_[static_cast<std::size_t>(w.len)][w.bits] = static_cast<std::uint8_t>(s);
}

std::uint64_t SupportTree::count(int level, NodeStatus s) const {
  std::uint64_t n = 0;
  for (std::uint8_t v : status_[static_cast<std::size_t>(level)]) {
    if (v == static_cast<std::uint8_t>(s)) ++n;
  }
  return n;
}

std::uint64_t SupportTree::count(NodeStatus s) const {
  std::uint64_t n = 0;
  for (int d = 0; d <= depth_; ++d) n += count(d, s);
  return n;
}

std::vector<std::uint64_t> SupportTree::in_level(int level) const {
  std::vector<std::uint64_t> out;
  const auto& row = status_[static_cast<std::size_t>(level)];
  for (std::uint64_t v = 0; v < row.size(); ++v) {
    if (row[v] == static_cast<std::uint8_t>(NodeStatus::In)) out.push_back(v);
  }
  return out;
}

DyadicInterval measure_interval(const MeasureCode& m, const CodeWord& sigma,
                                unsigned bits_per_column) {
  const BinaryWord w = to_binary_word(sigma);
  DyadicInterval iv = DyadicInterval::point(DyadicRational(1));
  for (int j = 0; j < w.len; ++j) {
    const DyadicInterval cond =
        m.conditional_interval(index_of(w.prefix(j)), bits_per_column);
    const DyadicInterval step =
        w.digit(j) == 0
            ? cond
            : DyadicInterval::sub(DyadicInterval::point(DyadicRational(1)), cond);
    iv = DyadicInterval::mul(iv, step);
  }
  return iv;
}

SupportTree support_tree(const MeasureCode& m, int depth, unsigned bits) {
  SupportTree t(depth);
  const DyadicRational zero;
  for (int d = 0; d < depth; ++d) {
    for (std::uint64_t value = 0; value < (std::uint64_t{1} << d); ++value) {
      const BinaryWord node{value, d};
      const NodeStatus parent = t.status(node);
      if (parent == NodeStatus::Out) continue;  // children stay Out
      if (parent == NodeStatus::Undetermined) {
        t.set_status(node.child(0), NodeStatus::Undetermined);
        t.set_status(node.child(1), NodeStatus::Undetermined);
        continue;
      }
      const DyadicInterval cond = m.conditional_interval(index_of(node), bits);
      const DyadicInterval flip =
          DyadicInterval::sub(DyadicInterval::point(DyadicRational(1)), cond);
      const DyadicInterval* side[2] = {&cond, &flip};
      for (int c = 0; c < 2; ++c) {
        NodeStatus s;
        if (side[c]->lo() > zero) {
          s = NodeStatus::In;
        } else if (side[c]->hi() == zero) {
          s = NodeStatus::Out;
        } else {
          s = NodeStatus::Undetermined;
        }
        t.set_status(node.child(c), s);
      }
    }
  }
  return t;
}

MeasureCode support_measure_code(const CodeWord& x) {
  if (x.alphabet_size() != 3) throw std::invalid_argument("expected a ternary code");
  MeasureCode m;
  m.set_default_pattern("0");
  // Breadth-first walk of the decoded tree, assigning each consuming node its
  // periodic column.  Stops when the digits run out; member nodes left
  // without a digit get an unknown column.
  std::vector<BinaryWord> frontier{BinaryWord::root()};
  std::size_t pos = 0;
  while (!frontier.empty() && frontier.front().len < BinaryWord::kMaxLen) {
    std::vector<BinaryWord> next_level;
    for (BinaryWord node : frontier) {
      if (pos >= x.size()) {
        m.set_column(index_of(node), MeasureCode::Column{{}, "", true});
        continue;
      }
      const int digit = x[pos++];
      MeasureCode::Column col;
      switch (digit) {
        case 0: col = {{}, "1", false}; break;     // conditional 1
        case 1: col = {{}, "0", false}; break;     // conditional 0
        default: col = {{1}, "0", false}; break;   // conditional 1/2
      }
      m.set_column(index_of(node), std::move(col));
      if (digit == 0 || digit == 2) next_level.push_back(node.child(0));
      if (digit == 1 || digit == 2) next_level.push_back(node.child(1));
    }
    frontier = std::move(next_level);
  }
  return m;
}

ThirdCase classify_third(const MeasureCode& m, std::uint64_t column_index,
                         unsigned max_bits) {
  const auto known = m.known_bits(column_index);
  for (unsigned bits = 2;; bits = std::min(bits * 2, max_bits)) {
    if (known && *known < bits) throw NeedMoreBits(column_index);
    const DyadicInterval iv = m.conditional_interval(column_index, bits);
    if (iv.hi().compare_fraction(1, 3) < 0) return ThirdCase::RightOnly;
    if (iv.lo().compare_fraction(2, 3) > 0) return ThirdCase::LeftOnly;
    if (iv.lo().compare_fraction(1, 3) > 0 && iv.hi().compare_fraction(2, 3) < 0) {
      return ThirdCase::Both;
    }
    if (bits >= max_bits) return ThirdCase::Undetermined;
  }
}

SupportTree third_support_tree(const MeasureCode& m, int depth, unsigned max_bits) {
  SupportTree t(depth);
  for (int d = 0; d < depth; ++d) {
    for (std::uint64_t value = 0; value < (std::uint64_t{1} << d); ++value) {
      const BinaryWord node{value, d};
      const NodeStatus parent = t.status(node);
      if (parent == NodeStatus::Out) continue;
      if (parent == NodeStatus::Undetermined) {
        t.set_status(node.child(0), NodeStatus::Undetermined);
        t.set_status(node.child(1), NodeStatus::Undetermined);
        continue;
      }
      switch (classify_third(m, index_of(node), max_bits)) {
        case ThirdCase::RightOnly:
          t.set_status(node.child(0), NodeStatus::Out);
          t.set_status(node.child(1), NodeStatus::In);
          break;
        case ThirdCase::LeftOnly:
          t.set_status(node.child(0), NodeStatus::In);
          t.set_status(node.child(1), NodeStatus::Out);
          break;
        case ThirdCase::Both:
          t.set_status(node.child(0), NodeStatus::In);
          t.set_status(node.child(1), NodeStatus::In);
          break;
        case ThirdCase::Undetermined:
          t.set_status(node.child(0), NodeStatus::Undetermined);
          t.set_status(node.child(1), NodeStatus::Undetermined);
          break;
      }
    }
  }
  return t;
}

CodeWord third_support_digits(const MeasureCode& m, int depth, unsigned max_bits) {
  CodeWord code(3);
  FiniteTree tree(depth);
  for (int d = 0; d < depth; ++d) {
    const std::vector<std::uint64_t> current = tree.level(d);
    for (std::uint64_t value : current) {
      const BinaryWord node{value, d};
      const std::uint64_t index = index_of(node);
      switch (classify_third(m, index, max_bits)) {
        case ThirdCase::RightOnly:
          code.push_back(1);
          tree.add(node.child(1));
          break;
        case ThirdCase::LeftOnly:
          code.push_back(0);
          tree.add(node.child(0));
          break;
        case ThirdCase::Both:
          code.push_back(2);
          tree.add(node.child(0));
          tree.add(node.child(1));
          break;
        case ThirdCase::Undetermined:
          throw UndeterminedNode(index);
      }
    }
  }
  return code;
}

}  // namespace cantor
