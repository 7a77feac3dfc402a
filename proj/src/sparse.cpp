#include "gint/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace gint {

SparseVector::SparseVector(std::size_t dim, std::vector<Entry> entries) : dim_(dim) {
  if (dim == 0) throw Error("sparse vector dimension must be positive");
  entries_.reserve(entries.size());
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const Entry& e = entries[n];
    if (e.index >= dim) {
      throw Error("index " + std::to_string(e.index) + " out of range for dimension " +
                  std::to_string(dim));
    }
    if (n > 0 && e.index <= entries[n - 1].index) {
      throw Error("indices must be strictly increasing (index " + std::to_string(e.index) +
                  " after " + std::to_string(entries[n - 1].index) + ")");
    }
    if (!std::isfinite(e.value)) {
      throw Error("non-finite value at index " + std::to_string(e.index));
    }
    if (e.value != 0.0) entries_.push_back(e);
  }
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.push_back({i, values[i]});
  }
  return SparseVector(values.size(), std::move(entries));
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim_, 0.0);
  for (const Entry& e : entries_) out[e.index] = e.value;
  return out;
}

SparseVector SparseVector::widened(std::size_t new_dim) const {
  if (new_dim < dim_) {
    throw Error("cannot shrink dimension from " + std::to_string(dim_) + " to " +
                std::to_string(new_dim));
  }
  SparseVector out = *this;
  out.dim_ = new_dim;
  return out;
}

LabeledDataset::LabeledDataset(std::vector<SparseVector> vectors, std::vector<int> labels)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
  if (vectors_.empty()) throw Error("dataset must contain at least one vector");
  if (vectors_.size() != labels_.size()) {
    throw Error("dataset has " + std::to_string(vectors_.size()) + " vectors but " +
                std::to_string(labels_.size()) + " labels");
  }
  const std::size_t dim = vectors_.front().dim();
  for (const SparseVector& v : vectors_) {
    if (v.dim() != dim) throw Error("dataset vectors must share one dimension");
  }
}

LabeledDataset LabeledDataset::widened(std::size_t new_dim) const {
  std::vector<SparseVector> vectors;
  vectors.reserve(vectors_.size());
  for (const SparseVector& v : vectors_) vectors.push_back(v.widened(new_dim));
  return LabeledDataset(std::move(vectors), labels_);
}

}  // namespace gint
