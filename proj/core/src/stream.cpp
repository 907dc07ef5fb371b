#include "cantor/stream.hpp"

#include <stdexcept>

namespace cantor {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kPhiloxM0, c[0], hi0, lo0);
    mul_hi_lo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

DigitStream::DigitStream(std::uint64_t master_seed, std::uint64_t stream_id,
                         int alphabet_size)
    : seed_(master_seed), id_(stream_id), alphabet_(alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 4) {
    throw std::invalid_argument("alphabet size must be 2, 3, or 4");
  }
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ stream_id);
  h = splitmix64(h ^ static_cast<std::uint64_t>(alphabet_size));
  key_ = {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
}

int DigitStream::digit_at(std::uint64_t position) const {
  // One block per position; the third counter word is a retry lane for the
  // exact-rejection step below.
  for (std::uint32_t attempt = 0;; ++attempt) {
    const std::array<std::uint32_t, 4> block = philox4x32(
        {static_cast<std::uint32_t>(position),
         static_cast<std::uint32_t>(position >> 32), attempt, 0u},
        key_);
    switch (alphabet_) {
      case 2:
        return static_cast<int>(block[0] & 1u);
      case 4:
        return static_cast<int>(block[0] & 3u);
      default: {
        // 2^64 = 3 * floor(2^64/3) + 1, so rejecting the single top value
        // makes v % 3 exactly uniform over {0,1,2}.
        const std::uint64_t v =
            (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
        if (v != ~std::uint64_t{0}) return static_cast<int>(v % 3);
        break;  // astronomically rare; retry on the next attempt lane
      }
    }
  }
}

}  // namespace cantor
