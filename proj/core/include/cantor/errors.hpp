#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantor {

/// A decoder ran out of code digits; `required` is a lower bound on the
/// number of digits needed to make further progress.
class NeedMoreCode : public std::runtime_error {
 public:
  explicit NeedMoreCode(std::uint64_t required)
      : std::runtime_error("code prefix too short, need at least " +
                           std::to_string(required) + " digits"),
        required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// A measure column is too short for the requested precision.
class NeedMoreBits : public std::runtime_error {
 public:
  explicit NeedMoreBits(std::uint64_t column_index)
      : std::runtime_error("column " + std::to_string(column_index) +
                           " has too few known bits"),
        column_(column_index) {}
  std::uint64_t column_index() const { return column_; }

 private:
  std::uint64_t column_;
};

/// A path selection hit a tree node with no member children.
class DeadEnd : public std::runtime_error {
 public:
  DeadEnd() : std::runtime_error("tree has a dead end on the selected path") {}
};

/// A node label or digit was requested outside the stored range.
class OutOfRange : public std::out_of_range {
 public:
  explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// A 1/3-support digit could not be emitted because the conditional interval
/// still straddles a threshold at the permitted precision.
class UndeterminedNode : public std::runtime_error {
 public:
  explicit UndeterminedNode(std::uint64_t node_index)
      : std::runtime_error("node " + std::to_string(node_index) +
                           " undetermined at the permitted precision"),
        node_(node_index) {}
  std::uint64_t node_index() const { return node_; }

 private:
  std::uint64_t node_;
};

/// Interval widths exceeded the certification budget; retry with a larger
/// working precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

/// Square root of an interval with a negative lower endpoint.
class NegativeInput : public std::domain_error {
 public:
  NegativeInput() : std::domain_error("interval sqrt of negative input") {}
};

}  // namespace cantor
