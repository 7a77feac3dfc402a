#include "gint/encode.hpp"

#include <string>

namespace gint {

SparseVector EncodedFeatures::to_sparse() const {
  std::vector<Entry> entries;
  entries.reserve(ones.size());
  for (std::uint64_t index : ones) entries.push_back({index, 1.0});
  return SparseVector(dim(), std::move(entries));
}

EncodedFeatures encode(const GcwsSketch& sketch, unsigned b) {
  if (b < kMinBits || b > kMaxBits) {
    throw Error("b must be in [1, 16], got " + std::to_string(b));
  }
  EncodedFeatures out{b, sketch.signatures.size(), {}};
  const std::uint64_t width = out.block_size();
  out.ones.reserve(out.k);
  for (std::size_t j = 0; j < out.k; ++j) {
    const std::uint64_t v = low_bits(sketch.signatures[j].i_star, b);
    out.ones.push_back(j * width + (width - 1 - v));
  }
  return out;
}

std::size_t encoded_dot(const EncodedFeatures& x, const EncodedFeatures& y) {
  if (x.b != y.b || x.k != y.k || x.ones.size() != y.ones.size()) {
    throw Error("encoded feature shapes differ");
  }
  std::size_t matches = 0;
  for (std::size_t j = 0; j < x.ones.size(); ++j) matches += x.ones[j] == y.ones[j];
  return matches;
}

}  // namespace gint
