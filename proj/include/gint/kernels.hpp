#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gint/sparse.hpp"
#include "gint/transform.hpp"

namespace gint {

enum class KernelKind { Linear, Rbf, Gmm, Ngmm, Gint };

std::string_view to_string(KernelKind kind) noexcept;
/// Accepts the lowercase names printed by to_string().
KernelKind parse_kernel_kind(std::string_view name);

/// Kernel choice plus its parameter. gamma is present iff kind is Rbf.
class KernelSpec {
 public:
  /// Throws gint::Error for Rbf (use rbf()).
  static KernelSpec of(KernelKind kind);
  /// Throws gint::Error unless gamma > 0 and finite.
  static KernelSpec rbf(double gamma);

  KernelKind kind() const noexcept { return kind_; }
  std::optional<double> gamma() const noexcept { return gamma_; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelKind kind, std::optional<double> gamma) : kind_(kind), gamma_(gamma) {}

  KernelKind kind_;
  std::optional<double> gamma_;
};

/// Dense row-major matrix of kernel values.
struct KernelMatrix {
  KernelSpec spec;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct MinMaxSums {
  double min_sum = 0.0;
  double max_sum = 0.0;
};

/// Single merge pass over two sorted nonnegative vectors.
MinMaxSums min_max_sums(const TransformedVector& a, const TransformedVector& b);

// Pairwise kernels over the original signed vectors. The min-max family
// throws gint::Error where the value is 0/0 (see each function).

/// Throws if both vectors are zero.
double gmm(const SparseVector& u, const SparseVector& v);
/// Throws if either vector is zero.
double gint(const SparseVector& u, const SparseVector& v);
/// Throws if either vector is zero. Evaluated as g / (2 - g) from the GInt
/// value g (equal to min-sum / max-sum once both sides are normalized), so
/// orderings by the two kernels agree exactly. A vector paired with itself
/// scores exactly 1 under both.
double ngmm(const SparseVector& u, const SparseVector& v);
double linear(const SparseVector& u, const SparseVector& v);
/// exp(-gamma * ||u - v||^2); throws unless gamma > 0.
double rbf(const SparseVector& u, const SparseVector& v, double gamma);

/// Same kernels on vectors already transformed (and, for gint/ngmm, already
/// L1-normalized). No argument checks beyond emptiness.
double gmm(const TransformedVector& u, const TransformedVector& v);
double gint(const TransformedVector& un, const TransformedVector& vn);
double ngmm(const TransformedVector& un, const TransformedVector& vn);

double evaluate(const KernelSpec& spec, const SparseVector& u, const SparseVector& v);

/**
 * K[r][c] = K(rows[r], cols[c]).
 *
 * Each cell is computed independently, so the result is bitwise identical
 * for any thread count (0 selects the hardware concurrency). Undefined
 * cells raise gint::Error naming the first offending (row, col) pair in
 * row-major order.
 */
KernelMatrix kernel_matrix(const KernelSpec& spec, std::span<const SparseVector> rows,
                           std::span<const SparseVector> cols, unsigned threads = 0);

}  // namespace gint
