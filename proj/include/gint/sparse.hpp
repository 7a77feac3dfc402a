#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = {})
      : Error((source.empty() ? "line " : source + ":") + std::to_string(line) + ": " + detail),
        line_(line),
        detail_(detail) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

struct Entry {
  std::size_t index;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/**
 * Sparse real vector over a declared dimension.
 *
 * Entries are kept sorted by strictly increasing index; stored values are
 * finite and nonzero. Explicit zeros handed to the constructor are dropped.
 */
class SparseVector {
 public:
  SparseVector() = default;

  /// Throws gint::Error if dim is zero, an index is out of range, indices are
  /// not strictly increasing, or a value is not finite.
  SparseVector(std::size_t dim, std::vector<Entry> entries);

  /// Builds a sparse vector from dense values; zeros are not stored.
  static SparseVector from_dense(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }

  std::vector<double> to_dense() const;

  /// Same entries over a larger declared dimension.
  SparseVector widened(std::size_t new_dim) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

/// Labeled collection of vectors sharing one dimension.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<SparseVector> vectors, std::vector<int> labels);

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dim() const noexcept { return vectors_.empty() ? 0 : vectors_.front().dim(); }

  const std::vector<SparseVector>& vectors() const noexcept { return vectors_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const SparseVector& vector(std::size_t i) const { return vectors_.at(i); }
  int label(std::size_t i) const { return labels_.at(i); }

  /// Raises the shared dimension; new_dim must not be smaller than dim().
  LabeledDataset widened(std::size_t new_dim) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::vector<SparseVector> vectors_;
  std::vector<int> labels_;
};

}  // namespace gint
