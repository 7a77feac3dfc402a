#include "gint/ann.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

#include "gint/encode.hpp"
#include "gint/kernels.hpp"
#include "gint/parallel.hpp"

namespace gint {
namespace {

// Ranked by GInt, which NGMM = g / (2 - g) preserves; comparing g directly
// avoids ties introduced by rounding in the division.
struct Scored {
  std::size_t id;
  double g;
};

bool ranks_before(const Scored& a, const Scored& b) {
  return a.g > b.g || (a.g == b.g && a.id < b.id);
}

std::vector<Neighbor> top_of(std::vector<Scored> scored, std::size_t top) {
  const std::size_t keep = std::min(top, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    ranks_before);
  std::vector<Neighbor> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({scored[i].id, scored[i].g / (2.0 - scored[i].g)});
  }
  return out;
}

}  // namespace

std::size_t AnnIndex::KeyHash::operator()(const BucketKey& key) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint16_t v : key) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

AnnIndex AnnIndex::build(std::span<const SparseVector> vectors, const AnnParams& params,
                         const GcwsConfig& config, unsigned threads) {
  if (params.tables == 0 || params.band == 0) throw Error("L and m must be at least 1");
  if (params.bits < kMinBits || params.bits > kMaxBits) throw Error("b must be in [1, 16]");
  if (params.tables * params.band > config.k()) {
    throw Error("L*m = " + std::to_string(params.tables * params.band) + " exceeds k = " +
                std::to_string(config.k()));
  }
  if (vectors.empty()) throw Error("cannot index an empty collection");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].is_zero()) throw Error("vector " + std::to_string(i) + " is zero");
    if (vectors[i].dim() != vectors.front().dim()) throw Error("indexed vectors must share one dimension");
  }

  AnnIndex index(params, config);
  index.dim_ = vectors.front().dim();
  const std::vector<GcwsSketch> sketches = sketch_all(vectors, config, true, threads);

  index.normalized_.resize(vectors.size());
  parallel_for(vectors.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) index.normalized_[i] = l1_normalize(transform(vectors[i]));
  });

  index.tables_.resize(params.tables);
  index.keys_.resize(vectors.size());
  for (std::size_t id = 0; id < vectors.size(); ++id) {
    auto& keys = index.keys_[id];
    keys.reserve(params.tables);
    for (std::size_t l = 0; l < params.tables; ++l) {
      keys.push_back(index.table_key(sketches[id], l));
      index.tables_[l][keys.back()].push_back(id);
    }
  }
  return index;
}

AnnIndex::BucketKey AnnIndex::table_key(const GcwsSketch& s, std::size_t table) const {
  BucketKey key;
  key.reserve(params_.band);
  for (std::size_t j = table * params_.band; j < (table + 1) * params_.band; ++j) {
    key.push_back(static_cast<std::uint16_t>(low_bits(s.signatures[j].i_star, params_.bits)));
  }
  return key;
}

std::vector<std::size_t> AnnIndex::candidates_for(const GcwsSketch& s) const {
  std::vector<std::size_t> ids;
  for (std::size_t l = 0; l < tables_.size(); ++l) {
    const auto it = tables_[l].find(table_key(s, l));
    if (it != tables_[l].end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<std::size_t> AnnIndex::candidates(const SparseVector& q) const {
  if (q.is_zero()) throw Error("query vector is zero");
  if (q.dim() != dim_) throw Error("query dimension does not match the index");
  return candidates_for(sketch(q, config_));
}

std::vector<Neighbor> AnnIndex::query(const SparseVector& q, std::size_t top) const {
  if (top == 0) throw Error("top must be at least 1");
  const std::vector<std::size_t> ids = candidates(q);
  const TransformedVector qn = l1_normalize(transform(q));
  std::vector<Scored> scored;
  scored.reserve(ids.size());
  for (std::size_t id : ids) scored.push_back({id, gint(qn, normalized_[id])});
  return top_of(std::move(scored), top);
}

void AnnIndex::format_stats(std::ostream& out) const {
  for (std::size_t l = 0; l < tables_.size(); ++l) {
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& [key, ids] : tables_[l]) ++histogram[ids.size()];
    out << "table " << l;
    for (const auto& [size, count] : histogram) out << ' ' << size << ':' << count;
    out << '\n';
  }
}

std::vector<Neighbor> brute_force_top(std::span<const SparseVector> vectors, const SparseVector& q,
                                      std::size_t top) {
  if (top == 0) throw Error("top must be at least 1");
  if (q.is_zero()) throw Error("query vector is zero");
  const TransformedVector qn = l1_normalize(transform(q));
  std::vector<Scored> scored;
  scored.reserve(vectors.size());
  for (std::size_t id = 0; id < vectors.size(); ++id) {
    if (vectors[id].dim() != q.dim()) throw Error("query dimension does not match the data");
    scored.push_back({id, gint(qn, l1_normalize(transform(vectors[id])))});
  }
  return top_of(std::move(scored), top);
}

double recall_at(std::span<const Neighbor> returned, std::span<const Neighbor> truth,
                 std::size_t top) {
  if (top == 0) throw Error("top must be at least 1");
  std::size_t hits = 0;
  for (const Neighbor& t : truth.first(std::min(top, truth.size()))) {
    for (const Neighbor& r : returned.first(std::min(top, returned.size()))) {
      if (r.id == t.id) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(top);
}

}  // namespace gint
