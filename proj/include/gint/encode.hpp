#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gint/gcws.hpp"
#include "gint/sparse.hpp"

namespace gint {

inline constexpr unsigned kMinBits = 1;
inline constexpr unsigned kMaxBits = 16;

/// Binary vector of length 2^b * k holding exactly one 1 per block of 2^b.
struct EncodedFeatures {
  unsigned b = 0;
  std::size_t k = 0;
  std::vector<std::uint64_t> ones;  // ones[j] lies in block j

  std::uint64_t block_size() const noexcept { return std::uint64_t{1} << b; }
  std::uint64_t dim() const noexcept { return block_size() * k; }

  SparseVector to_sparse() const;
};

/// Lowest b bits of i*, one-hot within each block: low-bits value v sits at
/// position 2^b - 1 - v, so for b = 2, i* = 3 encodes as [1 0 0 0] and
/// i* = 0 as [0 0 0 1]. Throws gint::Error unless 1 <= b <= 16.
EncodedFeatures encode(const GcwsSketch& sketch, unsigned b);

/// Low-bits value of a signature index, as used in encode().
inline constexpr std::uint32_t low_bits(std::size_t i_star, unsigned b) noexcept {
  return static_cast<std::uint32_t>(i_star & ((std::size_t{1} << b) - 1));
}

/// Number of blocks whose ones coincide. Throws gint::Error on shape mismatch.
std::size_t encoded_dot(const EncodedFeatures& x, const EncodedFeatures& y);

}  // namespace gint
