#include "cantor/function.hpp"

#include <stdexcept>

namespace cantor {

namespace {
constexpr int kMaxMaterializedDepth = 24;
}

FunctionCode::FunctionCode(CodeWord code, int depth) : code_(std::move(code)), depth_(depth) {
  if (depth < 0 || depth > kMaxMaterializedDepth) {
    throw std::invalid_argument("materialized function depth out of range");
  }
  if (code_.alphabet_size() != 3) {
    throw std::invalid_argument("function code must be ternary");
  }
  if (code_.size() < required_digits(depth)) {
    throw NeedMoreCode(required_digits(depth));
  }
}

FunctionCode FunctionCode::sample(const DigitStream& source, int depth) {
  if (depth < 0 || depth > kMaxMaterializedDepth) {
    throw std::invalid_argument("materialized function depth out of range");
  }
  const DigitStream digits = source.with_alphabet(3);
  CodeWord code(3);
  const std::uint64_t n = required_digits(depth);
  for (std::uint64_t i = 0; i < n; ++i) code.push_back(digits.digit_at(i));
  return FunctionCode(std::move(code), depth);
}

FunctionCode sample_function_with_zeros(const FiniteTree& tree, const DigitStream& aux,
                                        int depth) {
  if (tree.depth() < depth) throw OutOfRange("tree shallower than requested depth");
  const DigitStream inside = aux.with_alphabet(2);   // uniform over {0,2}
  const DigitStream outside = aux.with_alphabet(3);  // uniform ternary
  CodeWord code(3);
  const std::uint64_t n = FunctionCode::required_digits(depth);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const BinaryWord node = word_at(i);
    const std::uint64_t pos = i - 1;
    int label;
    if (tree.contains(node)) {
      label = inside.digit_at(pos) ? 2 : 0;
    } else if (tree.contains(node.parent())) {
      label = 1;  // forced: the parent is in the tree, this child is not
    } else {
      label = outside.digit_at(pos);
    }
    code.push_back(label);
  }
  return FunctionCode(std::move(code), depth);
}

}  // namespace cantor
