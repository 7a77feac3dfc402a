#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gint/sparse.hpp"

namespace gint {

/**
 * Nonnegative vector over 2*D coordinates produced by sign splitting.
 *
 * Original coordinate i owns slots 2i (positive part) and 2i+1 (negative
 * part); at most one of the two is ever occupied. Stored values are > 0.
 */
class TransformedVector {
 public:
  TransformedVector() = default;

  std::size_t dim2() const noexcept { return dim2_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  bool l1_normalized() const noexcept { return l1_normalized_; }

  /// Sum of stored values.
  double l1_norm() const noexcept;

  friend bool operator==(const TransformedVector&, const TransformedVector&) = default;

 private:
  friend TransformedVector transform(const SparseVector& u);
  friend TransformedVector l1_normalize(const TransformedVector& t);
  friend TransformedVector scaled(const TransformedVector& t, double factor);

  std::size_t dim2_ = 0;
  std::vector<Entry> entries_;
  bool l1_normalized_ = false;
};

inline constexpr std::size_t positive_slot(std::size_t i) noexcept { return 2 * i; }
inline constexpr std::size_t negative_slot(std::size_t i) noexcept { return 2 * i + 1; }

/// Sign-splitting transform. u_i > 0 goes to slot 2i as u_i, u_i < 0 to slot
/// 2i+1 as -u_i. Zero coordinates produce nothing.
TransformedVector transform(const SparseVector& u);

/// Divides every value by the total. Throws gint::Error on an empty vector.
TransformedVector l1_normalize(const TransformedVector& t);

/// Multiplies every value by a positive factor; clears the normalized flag
/// unless factor is exactly 1.
TransformedVector scaled(const TransformedVector& t, double factor);

/// Inverse of transform().
SparseVector recover(const TransformedVector& t);

}  // namespace gint
