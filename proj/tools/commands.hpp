#pragma once

// Subcommand implementations behind the `gint` executable. Each run_*
// function writes data to files or `out`, diagnostics and timing lines to
// `log`, and throws gint::Error (or UsageError) on failure.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gint/ann.hpp"
#include "gint/kernels.hpp"
#include "gint/sparse.hpp"

namespace gint::cli {

/// Invalid flag combination; maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<double> kDefaultCGrid{0.01, 0.1, 1, 10, 100};
inline const std::vector<double> kDefaultGammaGrid{0.001, 0.01, 0.1, 1, 10};

struct KernelOptions {
  std::filesystem::path train;
  std::optional<std::filesystem::path> test;
  KernelKind kind = KernelKind::Ngmm;
  std::vector<double> gammas;  // required iff kind == Rbf
  std::filesystem::path out;
  std::optional<std::filesystem::path> test_out;  // defaults to <out>.test
  unsigned threads = 0;
};

struct HashOptions {
  std::filesystem::path input;
  std::size_t k = 256;
  unsigned b = 8;
  std::uint64_t seed = 1;
  bool normalize = true;
  std::filesystem::path out;
  std::optional<std::filesystem::path> sketch_out;
  unsigned threads = 0;
};

struct TrainEvalOptions {
  std::filesystem::path train;
  std::filesystem::path test;
  std::vector<double> c_grid = kDefaultCGrid;
  int epochs = 200;
  double step = 0.5;
  std::optional<std::filesystem::path> model_out;  // best model
};

struct TrainEvalRow {
  double reg_c;
  double train_accuracy;
  double test_accuracy;
};

struct TrainEvalResult {
  std::vector<TrainEvalRow> rows;
  std::size_t best = 0;  // first row with the highest test accuracy
};

struct EstimateOptions {
  std::filesystem::path input;
  std::size_t pairs = 100;
  std::size_t k = 1024;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct EstimateRow {
  std::size_t first;
  std::size_t second;
  double ngmm;
  double full;
  double zero_bit;
};

struct EstimateResult {
  std::vector<EstimateRow> rows;
  double max_zero_bit_error = 0.0;  // max |zero_bit - ngmm|
};

struct KnnOptions {
  std::filesystem::path index_data;
  std::filesystem::path queries;
  std::size_t top = 10;
  AnnParams ann;
  std::size_t k = 64;
  std::uint64_t seed = 1;
  bool brute = false;
  std::optional<std::filesystem::path> stats_out;
  unsigned threads = 0;
};

struct KnnResult {
  std::vector<std::vector<Neighbor>> results;
  std::vector<double> recall;  // filled with brute
  double mean_recall = 0.0;
};

/// Writes the kernel file paths it produced, in order.
std::vector<std::filesystem::path> run_kernel(const KernelOptions& o, std::ostream& out,
                                              std::ostream& log);
void run_hash(const HashOptions& o, std::ostream& out, std::ostream& log);
TrainEvalResult run_traineval(const TrainEvalOptions& o, std::ostream& out, std::ostream& log);
EstimateResult run_estimate(const EstimateOptions& o, std::ostream& out, std::ostream& log);
KnnResult run_knn(const KnnOptions& o, std::ostream& out, std::ostream& log);

/// Reads two dataset files and widens both to a common dimension.
std::pair<LabeledDataset, LabeledDataset> read_pair(const std::filesystem::path& first,
                                                    const std::filesystem::path& second);

}  // namespace gint::cli
