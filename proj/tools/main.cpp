#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace gint::cli;

  CLI::App app{"Generalized intersection / min-max kernels and GCWS hashing"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  KernelOptions kopt;
  std::string kind = "ngmm";
  bool gamma_grid = false;
  auto* kernel = app.add_subcommand("kernel", "Export precomputed kernel matrices");
  kernel->add_option("--train", kopt.train, "Training data (sparse text)")->required();
  kernel->add_option("--test", kopt.test, "Test data; also writes test-vs-train rows");
  kernel->add_option("--kind", kind, "linear | rbf | gmm | ngmm | gint")
      ->check(CLI::IsMember({"linear", "rbf", "gmm", "ngmm", "gint"}));
  kernel->add_option("--gamma", kopt.gammas, "RBF scale(s); several values write one file each");
  kernel->add_flag("--gamma-grid", gamma_grid, "Use the default RBF grid {0.001, 0.01, 0.1, 1, 10}");
  kernel->add_option("--out", kopt.out, "Train x train kernel file")->required();
  kernel->add_option("--test-out", kopt.test_out, "Test x train kernel file (default <out>.test)");

  HashOptions hopt;
  bool no_normalize = false;
  auto* hash = app.add_subcommand("hash", "GCWS-hash and b-bit encode a dataset");
  hash->add_option("--input", hopt.input)->required();
  hash->add_option("-k", hopt.k, "Samples per vector")->check(CLI::PositiveNumber);
  hash->add_option("-b", hopt.b, "Bits kept per sample")->check(CLI::Range(1, 16));
  hash->add_option("--seed", hopt.seed);
  hash->add_flag("--no-normalize", no_normalize, "Hash raw weights (GMM) instead of NGMM");
  hash->add_option("--out", hopt.out)->required();
  hash->add_option("--sketch-out", hopt.sketch_out, "Dump i*:t* signatures per vector");

  TrainEvalOptions topt;
  auto* traineval = app.add_subcommand("traineval", "Train linear models over a C grid");
  traineval->add_option("--train", topt.train)->required();
  traineval->add_option("--test", topt.test)->required();
  traineval->add_option("--c", topt.c_grid, "Regularization grid")->check(CLI::PositiveNumber);
  traineval->add_option("--epochs", topt.epochs)->check(CLI::PositiveNumber);
  traineval->add_option("--step", topt.step)->check(CLI::PositiveNumber);
  traineval->add_option("--model-out", topt.model_out, "Save the best model");

  EstimateOptions eopt;
  auto* estimate = app.add_subcommand("estimate", "Compare collision rates with exact NGMM");
  estimate->add_option("--input", eopt.input)->required();
  estimate->add_option("--pairs", eopt.pairs)->check(CLI::PositiveNumber);
  estimate->add_option("-k", eopt.k)->check(CLI::PositiveNumber);
  estimate->add_option("--seed", eopt.seed);

  KnnOptions nopt;
  auto* knn = app.add_subcommand("knn", "Near-neighbor search over banded GCWS tables");
  knn->add_option("--index", nopt.index_data, "Vectors to index")->required();
  knn->add_option("--queries", nopt.queries)->required();
  knn->add_option("--top", nopt.top)->check(CLI::PositiveNumber);
  knn->add_option("-L", nopt.ann.tables, "Hash tables")->check(CLI::PositiveNumber);
  knn->add_option("-m", nopt.ann.band, "Signatures per table key")->check(CLI::PositiveNumber);
  knn->add_option("-b", nopt.ann.bits)->check(CLI::Range(1, 16));
  knn->add_option("-k", nopt.k)->check(CLI::PositiveNumber);
  knn->add_option("--seed", nopt.seed);
  knn->add_flag("--brute", nopt.brute, "Also report brute-force top and recall");
  knn->add_option("--stats-out", nopt.stats_out, "Bucket-size histogram per table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*kernel) {
      kopt.kind = gint::parse_kernel_kind(kind);
      if (gamma_grid) kopt.gammas.insert(kopt.gammas.end(), kDefaultGammaGrid.begin(),
                                         kDefaultGammaGrid.end());
      kopt.threads = threads;
      run_kernel(kopt, std::cout, std::cerr);
    } else if (*hash) {
      hopt.normalize = !no_normalize;
      hopt.threads = threads;
      run_hash(hopt, std::cout, std::cerr);
    } else if (*traineval) {
      run_traineval(topt, std::cout, std::cerr);
    } else if (*estimate) {
      eopt.threads = threads;
      run_estimate(eopt, std::cout, std::cerr);
    } else if (*knn) {
      nopt.threads = threads;
      run_knn(nopt, std::cout, std::cerr);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
