#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gint/dataio.hpp"
#include "gint/encode.hpp"
#include "gint/gcws.hpp"
#include "gint/kernels.hpp"
#include "test_support.hpp"

using namespace gint;

namespace {

LabeledDataset parse(const std::string& text, std::optional<std::size_t> dim = std::nullopt) {
  std::istringstream in(text);
  return parse_sparse_dataset(in, dim);
}

std::string format(const LabeledDataset& d) {
  std::ostringstream out;
  format_sparse_dataset(d, out);
  return out.str();
}

std::string format(const KernelMatrix& m, std::vector<int> labels) {
  std::ostringstream out;
  format_precomputed_kernel(m, labels, out);
  return out.str();
}

}  // namespace

TEST(ReadSparse, MapsOneBasedIndices) {
  const LabeledDataset d = parse("1 1:0.5 3:-2.0\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.label(0), 1);
  EXPECT_EQ(d.dim(), 3u);
  const std::vector<Entry> expected{{0, 0.5}, {2, -2.0}};
  EXPECT_TRUE(std::ranges::equal(d.vector(0).entries(), expected));
}

TEST(ReadSparse, LabelOnlyLineIsZeroVector) {
  const LabeledDataset d = parse("0\n1 2:1\n");
  EXPECT_EQ(d.label(0), 0);
  EXPECT_TRUE(d.vector(0).is_zero());
  EXPECT_EQ(d.dim(), 2u);
}

TEST(ReadSparse, RejectsNonIncreasingIndices) {
  try {
    parse("1 3:1.0 2:1.0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse("1 2:1 2:1\n"), ParseError);
}

TEST(ReadSparse, ReportsOffendingLineNumber) {
  try {
    parse("1 1:1\n-1 2:2\n1 1:x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ReadSparse, RejectsNonFiniteValues) {
  EXPECT_THROW(parse("1 1:nan\n"), ParseError);
  EXPECT_THROW(parse("1 1:inf\n"), ParseError);
  EXPECT_THROW(parse("1 1:1e999\n"), ParseError);
}

TEST(ReadSparse, RejectsMalformedTokens) {
  for (const char* bad : {"", "x 1:1", "1.5 1:1", "1 0:1", "1 1", "1 :1", "1 1:", "1 -1:2",
                          "1 1:2:3", "1 a:1"}) {
    EXPECT_THROW(parse(std::string(bad) + "\n"), ParseError) << '"' << bad << '"';
  }
}

TEST(ReadSparse, AcceptsSignedLabelsAndDropsZeros) {
  const LabeledDataset d = parse("+1 1:0 2:3\n-1 1:2\n");
  EXPECT_EQ(d.label(0), 1);
  EXPECT_EQ(d.label(1), -1);
  ASSERT_EQ(d.vector(0).nnz(), 1u);
  EXPECT_EQ(d.vector(0).entries()[0].index, 1u);
}

TEST(ReadSparse, DimensionOverride) {
  EXPECT_EQ(parse("1 2:1\n", 10).dim(), 10u);
  EXPECT_THROW(parse("1 5:1\n", 3), Error);
}

TEST(ReadSparse, MissingFileIsAnError) {
  EXPECT_THROW(read_sparse_dataset("/nonexistent/gint/data.txt"), Error);
}

TEST(WriteSparse, ZeroVectorIsLabelOnly) {
  const LabeledDataset d({SparseVector(3, {}), SparseVector(3, {{1, 2.5}})}, {7, 1});
  EXPECT_EQ(format(d), "7\n1 2:2.5\n");
}

TEST(WriteSparse, RoundTripsRandomDatasets) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SparseVector> vs;
    std::vector<int> labels;
    for (int i = 0; i < 5; ++i) {
      vs.push_back(fixtures::random_vector(rng, 12, 0.4, 1e3));
      labels.push_back(static_cast<int>(rng() % 7) - 3);
    }
    // Keep the declared dimension observable from the data.
    vs[0] = SparseVector(12, {{11, 1.0}});
    const LabeledDataset d(vs, labels);
    EXPECT_EQ(parse(format(d)), d);
  }
}

TEST(WriteSparse, EncodedFeaturesHaveExactlyKOnes) {
  std::mt19937_64 rng(5);
  const GcwsConfig config(16, 3);
  std::vector<SparseVector> encoded;
  for (int i = 0; i < 10; ++i) {
    encoded.push_back(encode(sketch(fixtures::random_nonzero_vector(rng, 6, 0.5), config), 3).to_sparse());
  }
  const std::string text = format(LabeledDataset(encoded, std::vector<int>(10, 1)));
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::string tok;
    tokens >> tok;  // label
    int pairs = 0;
    while (tokens >> tok) {
      EXPECT_TRUE(tok.ends_with(":1")) << tok;
      ++pairs;
    }
    EXPECT_EQ(pairs, 16);
  }
}

TEST(PrecomputedKernel, SinglePoint) {
  const KernelMatrix m{KernelSpec::of(KernelKind::Ngmm), 1, 1, {1.0}};
  EXPECT_EQ(format(m, {1}), "1 0:1 1:1\n");
}

TEST(PrecomputedKernel, IdenticalPointsGiveAllOnes) {
  const SparseVector u(3, {{0, 1.0}, {2, -4.0}});
  const std::vector<SparseVector> pts{u, u};
  const KernelMatrix m = kernel_matrix(KernelSpec::of(KernelKind::Ngmm), pts, pts);
  EXPECT_EQ(format(m, {1, 2}), "1 0:1 1:1 2:1\n2 0:2 1:1 2:1\n");
}

TEST(PrecomputedKernel, DisjointSupportsUnderGmm) {
  // Sign splits of [-5, 3] vs [2, -1] and [4, -7] share no slot.
  const std::vector<SparseVector> test{SparseVector(2, {{0, -5.0}, {1, 3.0}})};
  const std::vector<SparseVector> train{SparseVector(2, {{0, 2.0}, {1, -1.0}}),
                                        SparseVector(2, {{0, 4.0}, {1, -7.0}})};
  const KernelMatrix m = kernel_matrix(KernelSpec::of(KernelKind::Gmm), test, train);
  EXPECT_EQ(format(m, {3}), "3 0:1 1:0 2:0\n");
}

TEST(PrecomputedKernel, KeepsFullPrecision) {
  const KernelMatrix m{KernelSpec::of(KernelKind::Gint), 1, 1, {2.0 / 3.0}};
  const std::string line = format(m, {0});
  const std::string value = line.substr(line.rfind(':') + 1);
  EXPECT_EQ(std::stod(value), 2.0 / 3.0);
  EXPECT_GE(value.size() - 2, 12u);  // "0." prefix
}

TEST(PrecomputedKernel, RejectsLabelCountMismatch) {
  const KernelMatrix m{KernelSpec::of(KernelKind::Linear), 2, 1, {1.0, 2.0}};
  EXPECT_THROW(format(m, {1}), Error);
}

TEST(ReadSparse, FuzzedInputNeverCrashes) {
  const std::string seed_text = "1 1:0.5 3:-2.0 10:1e-3\n-1 2:7\n0\n+2 4:1.25e2 5:-0.5\n";
  const std::string alphabet = "0123456789:.-+ eE\nxnaif";
  std::mt19937_64 rng(2024);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::string text = seed_text;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = rng() % (text.size() + 1);
      const char c = alphabet[rng() % alphabet.size()];
      switch (rng() % 3) {
        case 0: text.insert(text.begin() + static_cast<std::ptrdiff_t>(pos), c); break;
        case 1: if (pos < text.size()) text.erase(pos, 1); break;
        default: if (pos < text.size()) text[pos] = c; break;
      }
    }
    try {
      const LabeledDataset d = parse(text);
      for (const SparseVector& v : d.vectors()) {
        for (const Entry& x : v.entries()) ASSERT_TRUE(std::isfinite(x.value));
      }
      ++accepted;
    } catch (const Error&) {
      ++rejected;
    }
  }
  EXPECT_GT(accepted, 0);
  EXPECT_GT(rejected, 0);
}
