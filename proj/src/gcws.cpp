#include "gint/gcws.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "gint/parallel.hpp"
#include "gint/philox.hpp"

namespace gint {
namespace {

// Second key word separates this stream from any other use of the seed.
constexpr std::uint64_t kVariatesDomain = 0x6763'7773'7661'7269ULL;

struct Candidate {
  double a;
  std::size_t index;
  std::int64_t level;
};

// Inner loop of the sampler: one pass over the stored coordinates.
GcwsSignature sample_once(std::span<const Entry> entries, std::span<const double> logs,
                          std::uint64_t seed, std::size_t sample) {
  Candidate best{std::numeric_limits<double>::infinity(), entries.front().index, 0};
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const CoordinateDraw d = draw_coordinate(logs[n], variates(seed, sample, entries[n].index));
    if (d.a < best.a) best = {d.a, entries[n].index, d.t};
  }
  return {best.index, best.level};
}

std::vector<double> log_weights(const TransformedVector& t) {
  std::vector<double> logs;
  logs.reserve(t.nnz());
  for (const Entry& e : t.entries()) logs.push_back(std::log(e.value));
  return logs;
}

}  // namespace

GcwsConfig::GcwsConfig(std::size_t k, std::uint64_t seed) : k_(k), seed_(seed) {
  if (k == 0) throw Error("number of samples k must be at least 1");
}

Variates variates(std::uint64_t seed, std::uint64_t sample, std::uint64_t coordinate) noexcept {
  const Philox4x64::Key key{seed, kVariatesDomain};
  const auto w = Philox4x64::generate({coordinate, sample, 0, 0}, key);
  const auto x = Philox4x64::generate({coordinate, sample, 1, 0}, key);
  // Gamma(2, 1) as a sum of two unit exponentials.
  const double r = -std::log(unit_open(w[0])) - std::log(unit_open(w[1]));
  const double c = -std::log(unit_open(w[2])) - std::log(unit_open(w[3]));
  return {r, c, unit_closed_open(x[0])};
}

CoordinateDraw draw_coordinate(double log_weight, const Variates& v) noexcept {
  const double t = std::floor(log_weight / v.r + v.beta);
  const double z = std::exp(v.r * (t - v.beta));
  return {v.c / (z * std::exp(v.r)), static_cast<std::int64_t>(t)};
}

GcwsSignature hash_one(const TransformedVector& t, const GcwsConfig& config, std::size_t sample) {
  if (t.empty()) throw Error("cannot hash an empty vector");
  const std::vector<double> logs = log_weights(t);
  return sample_once(t.entries(), logs, config.seed(), sample);
}

GcwsSketch sketch(const TransformedVector& t, const GcwsConfig& config, bool normalize) {
  if (t.empty()) throw Error("cannot hash an empty vector");
  TransformedVector normalized;
  if (normalize && !t.l1_normalized()) normalized = l1_normalize(t);
  const TransformedVector& w = normalized.empty() ? t : normalized;
  const std::vector<double> logs = log_weights(w);
  GcwsSketch out{w.dim2(), config, {}};
  out.signatures.reserve(config.k());
  for (std::size_t j = 0; j < config.k(); ++j) {
    out.signatures.push_back(sample_once(w.entries(), logs, config.seed(), j));
  }
  return out;
}

GcwsSketch sketch(const SparseVector& u, const GcwsConfig& config, bool normalize) {
  return sketch(transform(u), config, normalize);
}

std::vector<GcwsSketch> sketch_all(std::span<const SparseVector> vectors, const GcwsConfig& config,
                                   bool normalize, unsigned threads) {
  std::vector<GcwsSketch> out(vectors.size());
  parallel_for(vectors.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (vectors[i].is_zero()) {
        throw Error("vector " + std::to_string(i) + " is zero and cannot be hashed");
      }
      out[i] = sketch(vectors[i], config, normalize);
    }
  });
  return out;
}

double collision_rate(const GcwsSketch& a, const GcwsSketch& b, CollisionMode mode) {
  if (!(a.config == b.config)) throw Error("sketches were built with different configs");
  if (a.dim2 != b.dim2) throw Error("sketches cover different dimensions");
  if (a.signatures.size() != a.config.k() || b.signatures.size() != b.config.k()) {
    throw Error("sketch holds the wrong number of signatures");
  }
  std::size_t matches = 0;
  for (std::size_t j = 0; j < a.signatures.size(); ++j) {
    const GcwsSignature& x = a.signatures[j];
    const GcwsSignature& y = b.signatures[j];
    if (x.i_star == y.i_star && (mode == CollisionMode::ZeroBit || x.t_star == y.t_star)) {
      ++matches;
    }
  }
  return static_cast<double>(matches) / static_cast<double>(a.signatures.size());
}

void format_sketch(const GcwsSketch& s, std::ostream& out) {
  std::string line;
  for (std::size_t j = 0; j < s.signatures.size(); ++j) {
    if (j > 0) line += ' ';
    line += std::to_string(s.signatures[j].i_star);
    line += ':';
    line += std::to_string(s.signatures[j].t_star);
  }
  line += '\n';
  out << line;
}

}  // namespace gint
