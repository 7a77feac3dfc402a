#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gint/ann.hpp"
#include "gint/kernels.hpp"
#include "test_support.hpp"

using namespace gint;

namespace {

std::vector<SparseVector> random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fixtures::random_nonzero_vector(rng, dim, 0.5));
  return out;
}

}  // namespace

TEST(AnnBuild, RejectsBadParameters) {
  std::mt19937_64 rng(51);
  const auto pts = random_points(rng, 5, 4);
  EXPECT_THROW(AnnIndex::build(pts, {.tables = 9, .band = 2, .bits = 8}, GcwsConfig(16, 1)), Error);
  EXPECT_THROW(AnnIndex::build(pts, {.tables = 0, .band = 2, .bits = 8}, GcwsConfig(16, 1)), Error);
  EXPECT_THROW(AnnIndex::build(pts, {.tables = 2, .band = 2, .bits = 17}, GcwsConfig(16, 1)), Error);
  auto with_zero = pts;
  with_zero[3] = SparseVector(4, {});
  EXPECT_THROW(AnnIndex::build(with_zero, {.tables = 4, .band = 2, .bits = 8}, GcwsConfig(16, 1)),
               Error);
  EXPECT_NO_THROW(AnnIndex::build(pts, {.tables = 8, .band = 2, .bits = 8}, GcwsConfig(16, 1)));
}

TEST(AnnBuild, DuplicatesShareEveryBucket) {
  std::mt19937_64 rng(52);
  auto pts = random_points(rng, 20, 10);
  pts.push_back(pts[7]);
  const AnnIndex index = AnnIndex::build(pts, {}, GcwsConfig(64, 2));
  EXPECT_EQ(index.bucket_keys(7), index.bucket_keys(20));
  EXPECT_EQ(index.bucket_keys(7).size(), 32u);
  EXPECT_EQ(index.bucket_keys(7)[0].size(), 2u);
}

TEST(AnnBuild, DisjointPairNeverShares) {
  const std::vector<SparseVector> pts{SparseVector::from_dense(std::vector<double>{-5, 3}),
                                      SparseVector::from_dense(std::vector<double>{2, -1})};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const AnnIndex index = AnnIndex::build(pts, {.tables = 64, .band = 1, .bits = 16},
                                           GcwsConfig(64, seed));
    for (std::size_t l = 0; l < 64; ++l) EXPECT_NE(index.bucket_keys(0)[l], index.bucket_keys(1)[l]);
    EXPECT_EQ(index.candidates(pts[0]), (std::vector<std::size_t>{0}));
  }
}

TEST(AnnQuery, SelfIsFirstWithUnitScore) {
  std::mt19937_64 rng(53);
  const auto pts = random_points(rng, 200, 20);
  const AnnIndex index = AnnIndex::build(pts, {}, GcwsConfig(64, 3));
  for (std::size_t i = 0; i < pts.size(); i += 17) {
    const auto top = index.query(pts[i], 5);
    ASSERT_FALSE(top.empty());
    EXPECT_EQ(top[0].id, i);
    EXPECT_EQ(top[0].score, 1.0);
  }
  EXPECT_THROW(index.query(SparseVector(20, {}), 5), Error);
  EXPECT_THROW(index.query(pts[0], 0), Error);
}

TEST(AnnQuery, SoundAndRankedByGint) {
  std::mt19937_64 rng(54);
  const auto pts = random_points(rng, 300, 12);
  const AnnIndex index = AnnIndex::build(pts, {.tables = 16, .band = 2, .bits = 4}, GcwsConfig(32, 4));
  for (int qi = 0; qi < 30; ++qi) {
    const SparseVector q = fixtures::random_nonzero_vector(rng, 12, 0.5);
    const auto cands = index.candidates(q);
    const auto top = index.query(q, cands.size() + 5);
    ASSERT_EQ(top.size(), cands.size());
    for (const Neighbor& n : top) {
      EXPECT_TRUE(std::binary_search(cands.begin(), cands.end(), n.id));
      EXPECT_EQ(n.score, ngmm(q, pts[n.id]));
    }
    std::vector<std::size_t> by_gint = cands;
    std::stable_sort(by_gint.begin(), by_gint.end(),
                     [&](std::size_t a, std::size_t b) { return gint::gint(q, pts[a]) > gint::gint(q, pts[b]); });
    std::vector<std::size_t> returned;
    for (const Neighbor& n : top) returned.push_back(n.id);
    EXPECT_EQ(returned, by_gint);
  }
}

TEST(AnnQuery, ConcurrentBuildsAgree) {
  std::mt19937_64 rng(55);
  const auto pts = random_points(rng, 150, 16);
  const AnnIndex a = AnnIndex::build(pts, {}, GcwsConfig(64, 5), 1);
  const AnnIndex b = AnnIndex::build(pts, {}, GcwsConfig(64, 5), 8);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(a.bucket_keys(i), b.bucket_keys(i));
  std::ostringstream sa, sb;
  a.format_stats(sa);
  b.format_stats(sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str().rfind("table 0 ", 0), 0u);
}

TEST(AnnBuckets, SingleTableShareRateTracksZeroBit) {
  std::mt19937_64 rng(56);
  const SparseVector u = fixtures::random_nonzero_vector(rng, 6, 0.8);
  const SparseVector v = fixtures::perturbed(rng, u, 3.0);
  const std::vector<SparseVector> pair{u, v};
  constexpr int seeds = 4000;
  int shared = 0;
  for (int s = 0; s < seeds; ++s) {
    const AnnIndex index = AnnIndex::build(pair, {.tables = 1, .band = 1, .bits = 16},
                                           GcwsConfig(1, static_cast<std::uint64_t>(s)));
    shared += index.bucket_keys(0) == index.bucket_keys(1);
  }
  const GcwsConfig big(seeds, 999);
  const double zero_bit = collision_rate(sketch(u, big), sketch(v, big), CollisionMode::ZeroBit);
  const double p = static_cast<double>(shared) / seeds;
  EXPECT_NEAR(p, zero_bit, 4.0 * std::sqrt(2.0 * p * (1 - p) / seeds) + 1e-9);
}

TEST(AnnRecall, BruteForceDefinitions) {
  const std::vector<Neighbor> truth{{1, 0.9}, {4, 0.8}, {2, 0.7}};
  const std::vector<Neighbor> got{{4, 0.8}, {9, 0.5}};
  EXPECT_DOUBLE_EQ(recall_at(got, truth, 3), 1.0 / 3.0);
  EXPECT_EQ(recall_at(truth, truth, 3), 1.0);

  std::mt19937_64 rng(57);
  const auto pts = random_points(rng, 50, 8);
  const auto top = brute_force_top(pts, pts[3], 50);
  ASSERT_EQ(top.size(), 50u);
  EXPECT_EQ(top[0].id, 3u);
  for (std::size_t i = 1; i < top.size(); ++i) {
    EXPECT_TRUE(top[i - 1].score > top[i].score ||
                (top[i - 1].score == top[i].score && top[i - 1].id < top[i].id));
  }
}

TEST(AnnRecall, MoreTablesDoNotHurtOnAverage) {
  std::mt19937_64 rng(58);
  const auto pts = random_points(rng, 300, 20);
  std::vector<SparseVector> queries;
  for (int i = 0; i < 20; ++i) queries.push_back(fixtures::perturbed(rng, pts[i * 7], 1.0));
  std::vector<std::vector<Neighbor>> truth;
  for (const auto& q : queries) truth.push_back(brute_force_top(pts, q, 10));

  double previous = -1.0;
  for (std::size_t tables : {1u, 4u, 16u, 32u}) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const AnnIndex index =
          AnnIndex::build(pts, {.tables = tables, .band = 2, .bits = 8}, GcwsConfig(64, seed));
      for (std::size_t q = 0; q < queries.size(); ++q) {
        total += recall_at(index.query(queries[q], 10), truth[q], 10);
      }
    }
    EXPECT_GE(total, previous) << "tables = " << tables;
    previous = total;
  }
}
