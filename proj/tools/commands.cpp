#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "gint/dataio.hpp"
#include "gint/encode.hpp"
#include "gint/gcws.hpp"
#include "gint/linclf.hpp"
#include "gint/parallel.hpp"
#include "gint/philox.hpp"

namespace gint::cli {
namespace {

// Pair sampling stream for `estimate`; distinct from the GCWS variates.
constexpr std::uint64_t kPairDomain = 0x7061'6972'7361'6d70ULL;

class PhaseTimer {
 public:
  PhaseTimer(std::ostream& log, std::string phase)
      : log_(log), phase_(std::move(phase)), start_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    log_ << "time " << phase_ << ' ' << std::fixed << std::setprecision(3) << elapsed.count()
         << "s\n"
         << std::defaultfloat;
  }

 private:
  std::ostream& log_;
  std::string phase_;
  std::chrono::steady_clock::time_point start_;
};

std::uint64_t uniform_below(std::uint64_t bits, std::uint64_t n) {
  std::uint64_t hi = 0, lo = 0;
  mulhilo(bits, n, hi, lo);
  return hi;
}

std::filesystem::path with_suffix(const std::filesystem::path& p, const std::string& suffix) {
  return std::filesystem::path(p.string() + suffix);
}

void require_nonzero(const LabeledDataset& data, const std::filesystem::path& path) {
  std::string lines;
  std::size_t count = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.vector(i).is_zero()) continue;
    if (++count <= 20) lines += (lines.empty() ? "" : ", ") + std::to_string(i + 1);
  }
  if (count == 0) return;
  if (count > 20) lines += ", ...";
  throw Error(path.string() + ": " + std::to_string(count) +
              " zero vector(s) cannot be hashed (lines " + lines + ")");
}

}  // namespace

std::pair<LabeledDataset, LabeledDataset> read_pair(const std::filesystem::path& first,
                                                    const std::filesystem::path& second) {
  LabeledDataset a = read_sparse_dataset(first);
  LabeledDataset b = read_sparse_dataset(second);
  const std::size_t dim = std::max(a.dim(), b.dim());
  if (a.dim() != dim) a = a.widened(dim);
  if (b.dim() != dim) b = b.widened(dim);
  return {std::move(a), std::move(b)};
}

std::vector<std::filesystem::path> run_kernel(const KernelOptions& o, std::ostream& out,
                                              std::ostream& log) {
  if (o.kind == KernelKind::Rbf && o.gammas.empty()) {
    throw UsageError("the rbf kernel requires --gamma (or --gamma-grid)");
  }
  if (o.kind != KernelKind::Rbf && !o.gammas.empty()) {
    throw UsageError("--gamma only applies to the rbf kernel");
  }

  LabeledDataset train;
  std::optional<LabeledDataset> test;
  {
    PhaseTimer t(log, "read");
    if (o.test) {
      auto [a, b] = read_pair(o.train, *o.test);
      train = std::move(a);
      test = std::move(b);
    } else {
      train = read_sparse_dataset(o.train);
    }
  }

  std::vector<KernelSpec> specs;
  if (o.kind == KernelKind::Rbf) {
    for (double g : o.gammas) specs.push_back(KernelSpec::rbf(g));
  } else {
    specs.push_back(KernelSpec::of(o.kind));
  }

  std::vector<std::filesystem::path> written;
  for (const KernelSpec& spec : specs) {
    std::string suffix;
    if (specs.size() > 1) suffix = ".gamma" + format_real(*spec.gamma());
    const auto train_path = with_suffix(o.out, suffix);
    KernelMatrix m{spec, 0, 0, {}};
    {
      PhaseTimer t(log, "kernel-train");
      m = kernel_matrix(spec, train.vectors(), train.vectors(), o.threads);
    }
    write_precomputed_kernel(m, train.labels(), train_path);
    out << "wrote " << train_path.string() << ' ' << m.rows << 'x' << m.cols << '\n';
    written.push_back(train_path);

    if (test) {
      const auto test_path = with_suffix(o.test_out.value_or(with_suffix(o.out, ".test")), suffix);
      {
        PhaseTimer t(log, "kernel-test");
        m = kernel_matrix(spec, test->vectors(), train.vectors(), o.threads);
      }
      write_precomputed_kernel(m, test->labels(), test_path);
      out << "wrote " << test_path.string() << ' ' << m.rows << 'x' << m.cols << '\n';
      written.push_back(test_path);
    }
  }
  return written;
}

void run_hash(const HashOptions& o, std::ostream& out, std::ostream& log) {
  if (o.b < kMinBits || o.b > kMaxBits) throw UsageError("-b must be in [1, 16]");
  if (o.k == 0) throw UsageError("-k must be at least 1");
  const GcwsConfig config(o.k, o.seed);

  LabeledDataset data;
  {
    PhaseTimer t(log, "read");
    data = read_sparse_dataset(o.input);
  }
  require_nonzero(data, o.input);

  std::vector<GcwsSketch> sketches;
  {
    PhaseTimer t(log, "hash");
    sketches = sketch_all(data.vectors(), config, o.normalize, o.threads);
  }

  std::vector<SparseVector> encoded(data.size());
  {
    PhaseTimer t(log, "encode");
    parallel_for(data.size(), o.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) encoded[i] = encode(sketches[i], o.b).to_sparse();
    });
  }
  write_sparse_dataset(LabeledDataset(std::move(encoded), data.labels()), o.out);
  out << "wrote " << o.out.string() << ' ' << data.size() << " vectors, " << o.k
      << " ones each, dim " << (std::uint64_t{1} << o.b) * o.k << '\n';

  if (o.sketch_out) {
    std::ofstream dump(*o.sketch_out, std::ios::binary);
    if (!dump) throw Error("cannot open '" + o.sketch_out->string() + "' for writing");
    for (const GcwsSketch& s : sketches) format_sketch(s, dump);
    if (!dump.flush()) throw Error("write to '" + o.sketch_out->string() + "' failed");
  }
}

TrainEvalResult run_traineval(const TrainEvalOptions& o, std::ostream& out, std::ostream& log) {
  if (o.c_grid.empty()) throw UsageError("the C grid is empty");
  if (o.epochs < 1) throw UsageError("--epochs must be at least 1");
  auto [train, test] = read_pair(o.train, o.test);

  TrainEvalResult result;
  std::optional<LinearModel> best_model;
  out << "C train_accuracy test_accuracy\n";
  for (double c : o.c_grid) {
    std::optional<LinearModel> model;
    {
      PhaseTimer t(log, "train C=" + format_real(c));
      model = gint::train(train, {c, o.epochs, o.step});
    }
    const TrainEvalRow row{c, evaluate(*model, train), evaluate(*model, test)};
    out << format_real(c) << ' ' << format_real(row.train_accuracy) << ' '
        << format_real(row.test_accuracy) << '\n';
    if (result.rows.empty() || row.test_accuracy > result.rows[result.best].test_accuracy) {
      result.best = result.rows.size();
      best_model = std::move(model);
    }
    result.rows.push_back(row);
  }
  const TrainEvalRow& best = result.rows[result.best];
  out << "best C=" << format_real(best.reg_c) << " test_accuracy=" << format_real(best.test_accuracy)
      << '\n';
  if (o.model_out) save_model(*best_model, *o.model_out);
  return result;
}

EstimateResult run_estimate(const EstimateOptions& o, std::ostream& out, std::ostream& log) {
  if (o.pairs == 0) throw UsageError("--pairs must be at least 1");
  const GcwsConfig config(o.k, o.seed);
  const LabeledDataset data = read_sparse_dataset(o.input);

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.vector(i).is_zero()) usable.push_back(i);
  }
  if (usable.size() < 2) throw Error("estimate needs at least two nonzero vectors");

  EstimateResult result;
  result.rows.resize(o.pairs);
  for (std::size_t p = 0; p < o.pairs; ++p) {
    const auto w = Philox4x64::generate({p, 0, 0, 0}, {o.seed, kPairDomain});
    const std::size_t a = uniform_below(w[0], usable.size());
    std::size_t b = uniform_below(w[1], usable.size() - 1);
    if (b >= a) ++b;
    result.rows[p] = {usable[a], usable[b], 0.0, 0.0, 0.0};
  }
  {
    PhaseTimer t(log, "estimate");
    parallel_for(o.pairs, o.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t p = begin; p < end; ++p) {
        EstimateRow& row = result.rows[p];
        const SparseVector& u = data.vector(row.first);
        const SparseVector& v = data.vector(row.second);
        const GcwsSketch su = sketch(u, config);
        const GcwsSketch sv = sketch(v, config);
        row.ngmm = ngmm(u, v);
        row.full = collision_rate(su, sv, CollisionMode::Full);
        row.zero_bit = collision_rate(su, sv, CollisionMode::ZeroBit);
      }
    });
  }
  out << "first second ngmm full zerobit\n";
  for (const EstimateRow& row : result.rows) {
    result.max_zero_bit_error = std::max(result.max_zero_bit_error, std::abs(row.zero_bit - row.ngmm));
    out << row.first << ' ' << row.second << ' ' << format_real(row.ngmm) << ' '
        << format_real(row.full) << ' ' << format_real(row.zero_bit) << '\n';
  }
  out << "max_abs_zerobit_minus_ngmm " << format_real(result.max_zero_bit_error) << '\n';
  return result;
}

KnnResult run_knn(const KnnOptions& o, std::ostream& out, std::ostream& log) {
  if (o.top == 0) throw UsageError("--top must be at least 1");
  if (o.ann.tables * o.ann.band > o.k) throw UsageError("L*m must not exceed k");
  auto [data, queries] = read_pair(o.index_data, o.queries);

  std::optional<AnnIndex> index;
  {
    PhaseTimer t(log, "build");
    index = AnnIndex::build(data.vectors(), o.ann, GcwsConfig(o.k, o.seed), o.threads);
  }
  if (o.stats_out) {
    std::ofstream stats(*o.stats_out, std::ios::binary);
    if (!stats) throw Error("cannot open '" + o.stats_out->string() + "' for writing");
    index->format_stats(stats);
  }

  KnnResult result;
  result.results.resize(queries.size());
  {
    PhaseTimer t(log, "query");
    parallel_for(queries.size(), o.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t q = begin; q < end; ++q) result.results[q] = index->query(queries.vector(q), o.top);
    });
  }
  std::vector<std::vector<Neighbor>> truth;
  if (o.brute) {
    PhaseTimer t(log, "brute");
    truth.resize(queries.size());
    parallel_for(queries.size(), o.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t q = begin; q < end; ++q) {
        truth[q] = brute_force_top(data.vectors(), queries.vector(q), o.top);
      }
    });
  }

  const auto print = [&](const char* tag, std::size_t q, const std::vector<Neighbor>& ns) {
    out << tag << ' ' << q;
    for (const Neighbor& n : ns) out << ' ' << n.id << ':' << format_real(n.score);
    out << '\n';
  };
  for (std::size_t q = 0; q < queries.size(); ++q) {
    print("query", q, result.results[q]);
    if (!o.brute) continue;
    print("brute", q, truth[q]);
    const double r = recall_at(result.results[q], truth[q], o.top);
    result.recall.push_back(r);
    out << "recall " << q << ' ' << format_real(r) << '\n';
  }
  if (o.brute) {
    double sum = 0.0;
    for (double r : result.recall) sum += r;
    result.mean_recall = sum / static_cast<double>(result.recall.size());
    out << "mean_recall@" << o.top << ' ' << format_real(result.mean_recall) << '\n';
  }
  return result;
}

}  // namespace gint::cli
