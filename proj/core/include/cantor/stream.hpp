#pragma once

#include <array>
#include <cstdint>

namespace cantor {

/// Philox4x32-10 block function (Salmon et al., SC 2011).  Pure: output is a
/// function of the 128-bit counter and 64-bit key only.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// Deterministic, position-addressable stream of i.i.d. uniform digits over an
/// alphabet of size 2, 3, or 4.
///
/// The digit at each position is a pure function of
/// (master_seed, stream_id, alphabet_size, position), so streams can be read
/// in any order by any number of workers with identical results.  Streams
/// that differ in any of the three identity fields are independently keyed.
class DigitStream {
 public:
  DigitStream(std::uint64_t master_seed, std::uint64_t stream_id, int alphabet_size);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return id_; }
  int alphabet_size() const { return alphabet_; }

  /// Digit in [0, alphabet_size) at the given position.
  int digit_at(std::uint64_t position) const;

  /// Sibling stream over a different alphabet; independently keyed.
  DigitStream with_alphabet(int alphabet_size) const {
    return DigitStream(seed_, id_, alphabet_size);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t id_;
  int alphabet_;
  std::array<std::uint32_t, 2> key_;
};

/// Sequential reader over a stream; tracks the next position to consume.
class DigitCursor {
 public:
  explicit DigitCursor(const DigitStream& stream) : stream_(&stream) {}

  int next() { return stream_->digit_at(pos_++); }
  std::uint64_t consumed() const { return pos_; }

 private:
  const DigitStream* stream_;
  std::uint64_t pos_ = 0;
};

}  // namespace cantor
