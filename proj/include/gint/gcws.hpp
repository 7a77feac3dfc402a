#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gint/transform.hpp"

namespace gint {

/// Number of samples k and the master seed shared by every hashed vector.
class GcwsConfig {
 public:
  /// Throws gint::Error when k == 0.
  GcwsConfig(std::size_t k, std::uint64_t seed);

  std::size_t k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }

  friend bool operator==(const GcwsConfig&, const GcwsConfig&) = default;

 private:
  std::size_t k_;
  std::uint64_t seed_;
};

/// Per-(sample, coordinate) randomness: r, c ~ Gamma(2, 1), beta ~ U[0, 1).
struct Variates {
  double r;
  double c;
  double beta;
};

/// Counter-based and stateless, so every vector hashed with the same seed
/// sees the same (r, c, beta) at sample j, coordinate i.
Variates variates(std::uint64_t seed, std::uint64_t sample, std::uint64_t coordinate) noexcept;

/// Level t = floor(log(w)/r + beta) and score a = c / (exp(r (t - beta)) exp(r))
/// of one coordinate with weight w; the sample keeps the smallest a.
struct CoordinateDraw {
  double a;
  std::int64_t t;
};

CoordinateDraw draw_coordinate(double log_weight, const Variates& v) noexcept;

struct GcwsSignature {
  std::size_t i_star;
  std::int64_t t_star;

  friend bool operator==(const GcwsSignature&, const GcwsSignature&) = default;
};

struct GcwsSketch {
  std::size_t dim2 = 0;
  GcwsConfig config{1, 0};
  std::vector<GcwsSignature> signatures;
};

/**
 * One consistent weighted sample of t for sample index j.
 *
 * Only stored (nonzero) coordinates compete for the argmin; ties go to the
 * smaller coordinate. With t L1-normalized, the probability that two vectors
 * produce the same signature equals their NGMM value; with raw weights it is
 * their GMM value. Throws gint::Error on an empty vector.
 */
GcwsSignature hash_one(const TransformedVector& t, const GcwsConfig& config, std::size_t sample);

/// k signatures. With normalize set, t is L1-normalized first unless it
/// already is. Throws gint::Error on an empty vector.
GcwsSketch sketch(const TransformedVector& t, const GcwsConfig& config, bool normalize = true);

/// Sign-split, then sketch.
GcwsSketch sketch(const SparseVector& u, const GcwsConfig& config, bool normalize = true);

/// Sketches many vectors; the output does not depend on the thread count
/// (0 selects the hardware concurrency).
std::vector<GcwsSketch> sketch_all(std::span<const SparseVector> vectors, const GcwsConfig& config,
                                   bool normalize = true, unsigned threads = 0);

enum class CollisionMode {
  Full,     // (i*, t*) must both match
  ZeroBit,  // i* alone
};

/// Fraction of samples that collide. Throws gint::Error when the sketches
/// were built with different configs or dimensions.
double collision_rate(const GcwsSketch& a, const GcwsSketch& b, CollisionMode mode);

/// Debug dump: k space-separated `i_star:t_star` pairs on one line.
void format_sketch(const GcwsSketch& s, std::ostream& out);

}  // namespace gint
