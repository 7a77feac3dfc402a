#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "gint/gcws.hpp"
#include "gint/sparse.hpp"
#include "gint/transform.hpp"

namespace gint {

struct AnnParams {
  std::size_t tables = 32;  // L
  std::size_t band = 2;     // m signatures per key
  unsigned bits = 8;        // b
};

struct Neighbor {
  std::size_t id;
  double score;  // exact NGMM

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/**
 * Banded hash tables over b-bit GCWS values.
 *
 * Table l keys each vector by the low b bits of signatures
 * [l*m, (l+1)*m). Queries gather the union of their buckets and re-rank it
 * by exact NGMM, which orders candidates exactly as GInt does. Immutable
 * after build; concurrent queries are safe.
 */
class AnnIndex {
 public:
  /// Throws gint::Error if L*m > k, any parameter is out of range, or an
  /// input vector is zero.
  static AnnIndex build(std::span<const SparseVector> vectors, const AnnParams& params,
                        const GcwsConfig& config, unsigned threads = 0);

  /// At most `top` neighbors by descending GInt (hence non-increasing NGMM
  /// score), ties to the smaller id.
  /// Throws gint::Error on a zero query or top == 0.
  std::vector<Neighbor> query(const SparseVector& q, std::size_t top) const;

  /// Ids sharing at least one bucket with q, ascending.
  std::vector<std::size_t> candidates(const SparseVector& q) const;

  std::size_t size() const noexcept { return normalized_.size(); }
  const AnnParams& params() const noexcept { return params_; }
  const GcwsConfig& config() const noexcept { return config_; }

  /// Concatenated m b-bit values; one per table.
  using BucketKey = std::vector<std::uint16_t>;

  /// Keys of indexed vector `id`, one per table.
  const std::vector<BucketKey>& bucket_keys(std::size_t id) const { return keys_.at(id); }

  /// Per-table histogram of bucket sizes: `table <l> <size>:<count> ...`.
  void format_stats(std::ostream& out) const;

 private:
  struct KeyHash {
    std::size_t operator()(const BucketKey& key) const noexcept;
  };
  using Table = std::unordered_map<BucketKey, std::vector<std::size_t>, KeyHash>;

  AnnIndex(AnnParams params, GcwsConfig config) : params_(params), config_(config) {}

  BucketKey table_key(const GcwsSketch& s, std::size_t table) const;
  std::vector<std::size_t> candidates_for(const GcwsSketch& s) const;

  AnnParams params_;
  GcwsConfig config_;
  std::size_t dim_ = 0;
  std::vector<TransformedVector> normalized_;
  std::vector<Table> tables_;
  std::vector<std::vector<BucketKey>> keys_;  // keys_[id][table]
};

/// Exact NGMM top list over all vectors, same ordering rule as query().
std::vector<Neighbor> brute_force_top(std::span<const SparseVector> vectors, const SparseVector& q,
                                      std::size_t top);

/// |returned ∩ truth| / top, matching on ids.
double recall_at(std::span<const Neighbor> returned, std::span<const Neighbor> truth,
                 std::size_t top);

}  // namespace gint
