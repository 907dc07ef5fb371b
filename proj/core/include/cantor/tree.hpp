#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "cantor/stream.hpp"
#include "cantor/word.hpp"

namespace cantor {

/// Depth-bounded binary tree stored as a membership map: level d holds the
/// sorted packed values of the member words of length d.  Prefix-closed with
/// the root always present.
class FiniteTree {
 public:
  explicit FiniteTree(int depth);

  static FiniteTree full(int depth);

  int depth() const { return depth_; }
  bool contains(BinaryWord w) const;
  std::uint64_t count_at(int level) const;
  std::uint64_t total_nodes() const;
  const std::vector<std::uint64_t>& level(int d) const { return levels_[static_cast<std::size_t>(d)]; }

  /// Appends a member; insertions must arrive in length-lexicographic order
  /// and keep the tree prefix-closed.
  void add(BinaryWord w);

  /// All members in length-lexicographic order.
  std::vector<BinaryWord> members() const;

  friend bool operator==(const FiniteTree&, const FiniteTree&) = default;

 private:
  int depth_;
  std::vector<std::vector<std::uint64_t>> levels_;
};

/// Result of decoding a tree code: the tree, how many digits were consumed,
/// and the consuming (extendible) nodes in consumption order.
struct DecodeReceipt {
  FiniteTree tree;
  std::uint64_t digits_consumed = 0;
  std::vector<BinaryWord> extendible_order;
};

/// Decodes a ternary closed-set code breadth-first: at each member node,
/// digit 0 keeps only the left child, 1 only the right, 2 both.  The decoded
/// tree has no dead ends above the requested depth.
/// Throws NeedMoreCode when the word runs out of digits.
DecodeReceipt decode_tree3(const CodeWord& code, int depth);
DecodeReceipt decode_tree3(const DigitStream& source, int depth);

/// Decodes a 4-ary tree code; digit 3 makes the node a leaf, so the tree may
/// die out before the requested depth.  Every live node of length < depth
/// consumes exactly one digit.
DecodeReceipt decode_tree4(const CodeWord& code, int depth);
DecodeReceipt decode_tree4(const DigitStream& source, int depth);

/// Follows a path through the tree, copying the selector bit whenever both
/// children are members and taking the forced branch otherwise.  The selector
/// is indexed by output position; bits at forced steps are skipped.
/// Requires no dead ends above depth n; throws DeadEnd otherwise.
CodeWord select_path(const FiniteTree& tree, const CodeWord& selector_bits, int n);

/// |members of length n| / 2^n as an exact rational.
mpq_class cover_measure(const FiniteTree& tree, int n);

/// Builds a ternary code whose decoded tree contains y (up to the requested
/// depth).  Off-path digits are uniform; on-path nodes choose between the
/// forced direction and branching with equal probability, which is the
/// conditional law of uniform digits given containment.
CodeWord tree_code_containing(BinaryWord y, const DigitStream& aux, int depth);

}  // namespace cantor
