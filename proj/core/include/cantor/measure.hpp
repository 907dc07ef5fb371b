#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantor/dyadic.hpp"
#include "cantor/stream.hpp"
#include "cantor/word.hpp"

namespace cantor {

/// Column-coded measure prefix: column n holds the binary expansion of the
/// conditional probability mu(sigma_n 0 | sigma_n).  Columns are either
/// finite stored bits, eventually-periodic (exact), backed by a binary digit
/// stream at positions <n,k>, or defaulted to a code-wide pattern.
class MeasureCode {
 public:
  struct Column {
    std::vector<std::uint8_t> bits;  // leading stored bits
    std::string periodic;            // repeating tail pattern; empty = finite
    bool unknown = false;            // placeholder: reads raise NeedMoreBits
  };

  MeasureCode() = default;

  /// Columns drawn from a binary stream via the pairing <n,k>; every column
  /// is unbounded.
  static MeasureCode uniform_random(const DigitStream& source);

  void set_column(std::uint64_t index, Column column);
  void set_default_pattern(std::string periodic) { default_periodic_ = std::move(periodic); }

  bool has_explicit_column(std::uint64_t index) const { return columns_.count(index) > 0; }
  const std::map<std::uint64_t, Column>& explicit_columns() const { return columns_; }

  /// Bit k of column `index`; throws NeedMoreBits when unavailable.
  int column_bit(std::uint64_t index, std::uint64_t k) const;

  /// Bits known for a column, or nullopt when unbounded.
  std::optional<std::uint64_t> known_bits(std::uint64_t index) const;

  /// Exact conditional value when the column is structurally decided (a
  /// periodic all-0 or all-1 tail); nullopt otherwise.
  std::optional<DyadicRational> exact_conditional(std::uint64_t index) const;

  /// Enclosure of the conditional from the first `bits` column bits (exact
  /// columns yield a point interval regardless of `bits`).
  DyadicInterval conditional_interval(std::uint64_t index, unsigned bits) const;

 private:
  std::map<std::uint64_t, Column> columns_;
  std::optional<std::string> default_periodic_;
  std::optional<DigitStream> source_;
};

enum class NodeStatus : std::uint8_t { In, Out, Undetermined };

/// Dense status map over all binary words up to a depth.
class SupportTree {
 public:
  explicit SupportTree(int depth);

  int depth() const { return depth_; }
  NodeStatus status(BinaryWord w) const;
  void set_status(BinaryWord w, NodeStatus s);

  std::uint64_t count(int level, NodeStatus s) const;
  std::uint64_t count(NodeStatus s) const;

  /// Packed values of the In nodes of one level, ascending.
  std::vector<std::uint64_t> in_level(int level) const;

 private:
  int depth_;
  std::vector<std::vector<std::uint8_t>> status_;
};

/// Interval enclosure of mu(cylinder sigma): the product of per-step
/// conditional enclosures.  Exact where the columns are exact.
DyadicInterval measure_interval(const MeasureCode& m, const CodeWord& sigma,
                                unsigned bits_per_column);

/// Positivity of the measure along every prefix.  In requires certified
/// positive conditionals throughout; Out requires a certified zero (only
/// structurally exact columns can certify one); everything else is
/// Undetermined.
SupportTree support_tree(const MeasureCode& m, int depth, unsigned bits);

/// Treats a ternary closed-set code as a measure: the conditional at the
/// (i+1)-st extendible node is 1, 0, or 1/2 according to digit x(i), making
/// the support equal to the decoded tree.  Columns of certainly-excluded
/// nodes default to zero; member nodes beyond the supplied digits are marked
/// unknown.
MeasureCode support_measure_code(const CodeWord& x);

/// How a conditional relates to the thirds (1/3, 2/3) once refined.
enum class ThirdCase : std::uint8_t { RightOnly, LeftOnly, Both, Undetermined };

/// Classifies the conditional at a column against (1/3, 2/3), refining the
/// enclosure bit by bit up to max_bits.
ThirdCase classify_third(const MeasureCode& m, std::uint64_t column_index, unsigned max_bits);

/// Tree of nodes whose conditionals stay strictly inside the admissible
/// thirds; nodes that straddle a boundary at max_bits stay Undetermined.
SupportTree third_support_tree(const MeasureCode& m, int depth, unsigned max_bits);

/// Ternary code of the 1/3-support tree (digit per extendible node,
/// length-lex order); throws UndeterminedNode when a digit cannot be emitted.
CodeWord third_support_digits(const MeasureCode& m, int depth, unsigned max_bits);

}  // namespace cantor
