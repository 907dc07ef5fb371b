#pragma once

#include <concepts>
#include <cstdint>

#include "cantor/errors.hpp"
#include "cantor/stream.hpp"
#include "cantor/tree.hpp"
#include "cantor/word.hpp"

namespace cantor {

/// Anything that labels the non-root nodes of the binary tree with ternary
/// digits up to some depth.
template <typename F>
concept NodeLabeling = requires(const F f, BinaryWord w) {
  { f.label(w) } -> std::convertible_to<int>;
  { f.depth() } -> std::convertible_to<int>;
};

/// Materialized function code: a flat ternary word labeling node sigma_i with
/// digit i-1 for every non-root node of length <= depth.
class FunctionCode {
 public:
  FunctionCode(CodeWord code, int depth);

  /// Draws the full labeling up to depth from a stream.
  static FunctionCode sample(const DigitStream& source, int depth);

  static std::uint64_t required_digits(int depth) {
    return (std::uint64_t{1} << (depth + 1)) - 2;
  }

  int depth() const { return depth_; }
  const CodeWord& code() const { return code_; }

  /// Label of a node, read off the flat code via the length-lex index.
  int label(BinaryWord node) const {
    if (node.len < 1 || node.len > depth_) throw OutOfRange("node outside labeled range");
    return code_[static_cast<std::size_t>(index_of(node) - 1)];
  }

 private:
  CodeWord code_;
  int depth_;
};

/// Lazy labeling backed by a ternary digit stream; supports depths far beyond
/// what a materialized code could hold.
class StreamFunction {
 public:
  StreamFunction(const DigitStream& source, int depth)
      : stream_(source.with_alphabet(3)), depth_(depth) {}

  int depth() const { return depth_; }

  int label(BinaryWord node) const {
    if (node.len < 1 || node.len > depth_) throw OutOfRange("node outside labeled range");
    return stream_.digit_at(index_of(node) - 1);
  }

 private:
  DigitStream stream_;
  int depth_;
};

/// Output prefix of an evaluation.  `decided` means at least the requested
/// number of non-2 labels occurred; otherwise the input prefix was exhausted
/// first and `output` holds what was produced.
struct EvalResult {
  CodeWord output;
  bool decided = false;
};

/// Follows y through the labeled tree and deletes the 2's, truncating the
/// output to k bits.
template <NodeLabeling F>
EvalResult eval(const F& f, BinaryWord y, int k) {
  if (y.len > f.depth()) throw OutOfRange("input longer than labeled depth");
  EvalResult r{CodeWord(2), false};
  for (int j = 1; j <= y.len; ++j) {
    if (static_cast<int>(r.output.size()) >= k) break;
    const int lab = f.label(y.prefix(j));
    if (lab != 2) r.output.push_back(lab);
  }
  r.decided = static_cast<int>(r.output.size()) >= k;
  return r;
}

template <NodeLabeling F>
EvalResult eval(const F& f, const CodeWord& y, int k) {
  return eval(f, to_binary_word(y), k);
}

/// Tree of nodes whose path labels avoid 1 (all labels in {0,2}); the
/// finite-depth zeros set.  May contain dead ends.
template <NodeLabeling F>
FiniteTree zeros_tree(const F& f, int depth) {
  if (depth > f.depth()) throw OutOfRange("depth exceeds labeled depth");
  FiniteTree t(depth);
  for (int d = 0; d < depth; ++d) {
    const std::vector<std::uint64_t> current = t.level(d);
    for (std::uint64_t value : current) {
      const BinaryWord node{value, d};
      for (int c = 0; c < 2; ++c) {
        if (f.label(node.child(c)) != 1) t.add(node.child(c));
      }
    }
  }
  return t;
}

/// 4-ary digit induced by a pair of child labels: which children stay inside
/// the zeros tree.
inline int gw_digit_from_labels(int left, int right) {
  const bool l = left != 1, r = right != 1;
  if (l && r) return 2;
  if (l) return 0;
  if (r) return 1;
  return 3;
}

/// Reads off the 4-ary code of the zeros tree, one digit per live node in
/// length-lex order; decode_tree4 of the result reproduces zeros_tree(f).
template <NodeLabeling F>
CodeWord induced_gw_code(const F& f, int depth) {
  if (depth > f.depth()) throw OutOfRange("depth exceeds labeled depth");
  CodeWord code(4);
  FiniteTree t(depth);
  for (int d = 0; d < depth; ++d) {
    const std::vector<std::uint64_t> current = t.level(d);
    for (std::uint64_t value : current) {
      const BinaryWord node{value, d};
      const int digit = gw_digit_from_labels(f.label(node.child(0)), f.label(node.child(1)));
      code.push_back(digit);
      if (digit == 0 || digit == 2) t.add(node.child(0));
      if (digit == 1 || digit == 2) t.add(node.child(1));
    }
  }
  return code;
}

/// Draws a function whose zeros tree equals the given tree (up to depth),
/// with labels distributed as uniform ternary labels conditioned on that
/// event: members get uniform {0,2}, members' excluded siblings get 1, and
/// nodes outside the tree get uniform ternary labels.
FunctionCode sample_function_with_zeros(const FiniteTree& tree, const DigitStream& aux,
                                        int depth);

namespace detail {

// Match-state DFS shared by the hitting detectors.  `matched` counts target
// digits produced so far; a node is dead once a non-2 label contradicts the
// target, and done once matched reaches the target length.

template <NodeLabeling F>
bool done_reachable(const F& f, BinaryWord node, std::size_t matched,
                    const CodeWord& target, int depth_left) {
  if (matched == target.size()) return true;
  if (depth_left == 0) return false;
  for (int c = 0; c < 2; ++c) {
    const BinaryWord child = node.child(c);
    const int lab = f.label(child);
    std::size_t next = matched;
    if (lab != 2) {
      if (lab != target[matched]) continue;  // dead branch
      next = matched + 1;
    }
    if (done_reachable(f, child, next, target, depth_left - 1)) return true;
  }
  return false;
}

template <NodeLabeling F>
bool consistent_survives(const F& f, BinaryWord node, std::size_t matched,
                         const CodeWord& target, int depth_left) {
  if (matched == target.size()) return true;
  if (depth_left == 0) return true;  // consistent node at full depth
  for (int c = 0; c < 2; ++c) {
    const BinaryWord child = node.child(c);
    const int lab = f.label(child);
    std::size_t next = matched;
    if (lab != 2) {
      if (lab != target[matched]) continue;
      next = matched + 1;
    }
    if (consistent_survives(f, child, next, target, depth_left - 1)) return true;
  }
  return false;
}

struct PreimageUnits {
  std::uint64_t decided = 0;     // inputs whose output provably extends target
  std::uint64_t consistent = 0;  // inputs whose output is still consistent
};

template <NodeLabeling F>
PreimageUnits preimage_units(const F& f, BinaryWord node, std::size_t matched,
                             const CodeWord& target, int depth_left) {
  if (matched == target.size()) {
    const std::uint64_t whole = std::uint64_t{1} << depth_left;
    return {whole, whole};
  }
  if (depth_left == 0) return {0, 1};
  PreimageUnits total;
  for (int c = 0; c < 2; ++c) {
    const BinaryWord child = node.child(c);
    const int lab = f.label(child);
    std::size_t next = matched;
    if (lab != 2) {
      if (lab != target[matched]) continue;
      next = matched + 1;
    }
    const PreimageUnits sub = preimage_units(f, child, next, target, depth_left - 1);
    total.decided += sub.decided;
    total.consistent += sub.consistent;
  }
  return total;
}

}  // namespace detail

/// True iff some depth-d node's path provably outputs the target prefix.
/// Lower detector: monotone non-decreasing in d; true implies the range of
/// every total extension meets the target cylinder.
template <NodeLabeling F>
bool hit_witnessed(const F& f, const CodeWord& target, int d) {
  if (d > f.depth()) throw OutOfRange("depth exceeds labeled depth");
  return detail::done_reachable(f, BinaryWord::root(), 0, target, d);
}

/// True iff some depth-d node's output so far is consistent with the target
/// (one is a prefix of the other).  Upper detector: monotone non-increasing
/// in d; false certifies the induced measure of the target cylinder is zero.
template <NodeLabeling F>
bool hit_possible(const F& f, const CodeWord& target, int d) {
  if (d > f.depth()) throw OutOfRange("depth exceeds labeled depth");
  return detail::consistent_survives(f, BinaryWord::root(), 0, target, d);
}

/// Lower/upper weights (in units of 2^-d) of the set of depth-d inputs whose
/// output extends the target / is consistent with it.
struct PreimageWeight {
  std::uint64_t decided_units = 0;
  std::uint64_t consistent_units = 0;
  int scale = 0;  // units are 2^-scale
};

template <NodeLabeling F>
PreimageWeight preimage_weight(const F& f, const CodeWord& target, int d) {
  if (d > f.depth()) throw OutOfRange("depth exceeds labeled depth");
  const auto units = detail::preimage_units(f, BinaryWord::root(), 0, target, d);
  return {units.decided, units.consistent, d};
}

/// True iff every length-n cylinder has a witnessed hit at depth d.
template <NodeLabeling F>
bool onto_up_to_level(const F& f, int n, int d) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (!hit_witnessed(f, to_codeword(BinaryWord{v, n}), d)) return false;
  }
  return true;
}

}  // namespace cantor
