#pragma once

#include <array>
#include <cstdint>

namespace gint {

__extension__ using uint128_t = unsigned __int128;

/// High and low words of the full 128-bit product.
inline constexpr void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                              std::uint64_t& lo) noexcept {
  const uint128_t product = static_cast<uint128_t>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

/// Philox4x64-10 block function (Salmon et al., SC'11). Stateless: the same
/// (counter, key) always yields the same four words.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static constexpr Counter single_round(const Counter& ctr, const Key& key) noexcept {
    std::uint64_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
};

/// Uniform double in [0, 1) from the top 53 bits.
inline constexpr double unit_closed_open(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1): never 0, so its log is finite. Uses 52 bits so
/// the half-step offset stays exactly representable and the top value is
/// 1 - 2^-53 rather than rounding up to 1.
inline constexpr double unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace gint
