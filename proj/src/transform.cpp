#include "gint/transform.hpp"

namespace gint {

double TransformedVector::l1_norm() const noexcept {
  double sum = 0.0;
  for (const Entry& e : entries_) sum += e.value;
  return sum;
}

TransformedVector transform(const SparseVector& u) {
  TransformedVector t;
  t.dim2_ = 2 * u.dim();
  t.entries_.reserve(u.nnz());
  for (const Entry& e : u.entries()) {
    if (e.value > 0.0) {
      t.entries_.push_back({positive_slot(e.index), e.value});
    } else {
      t.entries_.push_back({negative_slot(e.index), -e.value});
    }
  }
  return t;
}

TransformedVector l1_normalize(const TransformedVector& t) {
  if (t.empty()) throw Error("cannot normalize zero vector");
  const double total = t.l1_norm();
  TransformedVector out = t;
  for (Entry& e : out.entries_) e.value /= total;
  out.l1_normalized_ = true;
  return out;
}

TransformedVector scaled(const TransformedVector& t, double factor) {
  if (!(factor > 0.0)) throw Error("scale factor must be positive");
  TransformedVector out = t;
  for (Entry& e : out.entries_) e.value *= factor;
  out.l1_normalized_ = t.l1_normalized_ && factor == 1.0;
  return out;
}

SparseVector recover(const TransformedVector& t) {
  std::vector<Entry> entries;
  entries.reserve(t.nnz());
  for (const Entry& e : t.entries()) {
    const std::size_t i = e.index / 2;
    entries.push_back({i, e.index % 2 == 0 ? e.value : -e.value});
  }
  return SparseVector(t.dim2() / 2, std::move(entries));
}

}  // namespace gint
