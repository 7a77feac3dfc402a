#include "gint/kernels.hpp"

#include <cmath>
#include <string>

#include "gint/parallel.hpp"

namespace gint {
namespace {

void require_same_dim(const SparseVector& u, const SparseVector& v) {
  if (u.dim() != v.dim()) {
    throw Error("dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                std::to_string(v.dim()));
  }
}

double min_max_ratio(const TransformedVector& u, const TransformedVector& v) {
  const MinMaxSums s = min_max_sums(u, v);
  return s.min_sum / s.max_sum;
}

// On normalized inputs min + max = |u|_1 + |v|_1 = 2, so NGMM is a function
// of GInt alone. Dividing by the computed (min + max) / 2 instead of 1
// absorbs rounding left over from normalization: a self match is exactly 1.
double intersection(const TransformedVector& un, const TransformedVector& vn) {
  const MinMaxSums s = min_max_sums(un, vn);
  return 2.0 * s.min_sum / (s.min_sum + s.max_sum);
}

double ngmm_of_gint(double g) { return g / (2.0 - g); }

// Squared distance by merge join over the original coordinates.
double squared_distance(const SparseVector& u, const SparseVector& v) {
  const auto a = u.entries();
  const auto b = v.entries();
  std::size_t i = 0, j = 0;
  double sum = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index == b[j].index) {
      const double d = a[i++].value - b[j++].value;
      sum += d * d;
    } else if (a[i].index < b[j].index) {
      sum += a[i].value * a[i].value;
      ++i;
    } else {
      sum += b[j].value * b[j].value;
      ++j;
    }
  }
  for (; i < a.size(); ++i) sum += a[i].value * a[i].value;
  for (; j < b.size(); ++j) sum += b[j].value * b[j].value;
  return sum;
}

// Per-vector state computed once before filling a kernel matrix.
struct Prepared {
  TransformedVector t;  // normalized for Gint/Ngmm when nonzero
};

std::vector<Prepared> prepare(const KernelSpec& spec, std::span<const SparseVector> vs) {
  std::vector<Prepared> out;
  if (spec.kind() != KernelKind::Gmm && spec.kind() != KernelKind::Gint &&
      spec.kind() != KernelKind::Ngmm) {
    return out;
  }
  out.reserve(vs.size());
  for (const SparseVector& v : vs) {
    TransformedVector t = transform(v);
    if (spec.kind() != KernelKind::Gmm && !t.empty()) t = l1_normalize(t);
    out.push_back({std::move(t)});
  }
  return out;
}

void check_domain(const KernelSpec& spec, std::span<const SparseVector> rows,
                  std::span<const SparseVector> cols) {
  const auto fail = [&](std::size_t r, std::size_t c, const char* why) {
    throw Error(std::string(to_string(spec.kind())) + " kernel undefined at pair (row " +
                std::to_string(r) + ", col " + std::to_string(c) + "): " + why);
  };
  switch (spec.kind()) {
    case KernelKind::Gint:
    case KernelKind::Ngmm:
      if (cols.empty()) return;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].is_zero()) fail(r, 0, "zero vector cannot be normalized");
        if (r == 0) {
          for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].is_zero()) fail(0, c, "zero vector cannot be normalized");
          }
        }
      }
      return;
    case KernelKind::Gmm: {
      std::size_t first_zero_col = cols.size();
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].is_zero()) {
          first_zero_col = c;
          break;
        }
      }
      if (first_zero_col == cols.size()) return;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].is_zero()) fail(r, first_zero_col, "both vectors are zero");
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::Linear: return "linear";
    case KernelKind::Rbf: return "rbf";
    case KernelKind::Gmm: return "gmm";
    case KernelKind::Ngmm: return "ngmm";
    case KernelKind::Gint: return "gint";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  for (KernelKind k : {KernelKind::Linear, KernelKind::Rbf, KernelKind::Gmm, KernelKind::Ngmm,
                       KernelKind::Gint}) {
    if (to_string(k) == name) return k;
  }
  throw Error("unknown kernel '" + std::string(name) + "'");
}

KernelSpec KernelSpec::of(KernelKind kind) {
  if (kind == KernelKind::Rbf) throw Error("rbf kernel requires gamma");
  return KernelSpec(kind, std::nullopt);
}

KernelSpec KernelSpec::rbf(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("rbf gamma must be positive");
  return KernelSpec(KernelKind::Rbf, gamma);
}

MinMaxSums min_max_sums(const TransformedVector& a, const TransformedVector& b) {
  const auto x = a.entries();
  const auto y = b.entries();
  std::size_t i = 0, j = 0;
  MinMaxSums s;
  while (i < x.size() && j < y.size()) {
    if (x[i].index == y[j].index) {
      const double p = x[i++].value;
      const double q = y[j++].value;
      if (p < q) {
        s.min_sum += p;
        s.max_sum += q;
      } else {
        s.min_sum += q;
        s.max_sum += p;
      }
    } else if (x[i].index < y[j].index) {
      s.max_sum += x[i++].value;
    } else {
      s.max_sum += y[j++].value;
    }
  }
  for (; i < x.size(); ++i) s.max_sum += x[i].value;
  for (; j < y.size(); ++j) s.max_sum += y[j].value;
  return s;
}

double gmm(const TransformedVector& u, const TransformedVector& v) {
  if (u.empty() && v.empty()) throw Error("GMM undefined on two zero vectors");
  return min_max_ratio(u, v);
}

double gint(const TransformedVector& un, const TransformedVector& vn) {
  if (un.empty() || vn.empty()) throw Error("GInt requires a normalizable vector");
  return intersection(un, vn);
}

double ngmm(const TransformedVector& un, const TransformedVector& vn) {
  if (un.empty() || vn.empty()) throw Error("NGMM requires a normalizable vector");
  return ngmm_of_gint(intersection(un, vn));
}

double gmm(const SparseVector& u, const SparseVector& v) {
  require_same_dim(u, v);
  if (u.is_zero() && v.is_zero()) throw Error("GMM undefined on two zero vectors");
  return gmm(transform(u), transform(v));
}

double gint(const SparseVector& u, const SparseVector& v) {
  require_same_dim(u, v);
  if (u.is_zero() || v.is_zero()) throw Error("GInt requires a normalizable vector");
  return gint(l1_normalize(transform(u)), l1_normalize(transform(v)));
}

double ngmm(const SparseVector& u, const SparseVector& v) {
  require_same_dim(u, v);
  if (u.is_zero() || v.is_zero()) throw Error("NGMM requires a normalizable vector");
  return ngmm(l1_normalize(transform(u)), l1_normalize(transform(v)));
}

double linear(const SparseVector& u, const SparseVector& v) {
  require_same_dim(u, v);
  const auto a = u.entries();
  const auto b = v.entries();
  std::size_t i = 0, j = 0;
  double sum = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index == b[j].index) {
      sum += a[i++].value * b[j++].value;
    } else if (a[i].index < b[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double rbf(const SparseVector& u, const SparseVector& v, double gamma) {
  require_same_dim(u, v);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("rbf gamma must be positive");
  return std::exp(-gamma * squared_distance(u, v));
}

double evaluate(const KernelSpec& spec, const SparseVector& u, const SparseVector& v) {
  switch (spec.kind()) {
    case KernelKind::Linear: return linear(u, v);
    case KernelKind::Rbf: return rbf(u, v, *spec.gamma());
    case KernelKind::Gmm: return gmm(u, v);
    case KernelKind::Ngmm: return ngmm(u, v);
    case KernelKind::Gint: return gint(u, v);
  }
  throw Error("unknown kernel kind");
}

KernelMatrix kernel_matrix(const KernelSpec& spec, std::span<const SparseVector> rows,
                           std::span<const SparseVector> cols, unsigned threads) {
  const std::size_t dim = !rows.empty() ? rows.front().dim() : cols.empty() ? 0 : cols.front().dim();
  for (const auto group : {rows, cols}) {
    for (const SparseVector& v : group) {
      if (v.dim() != dim) throw Error("kernel matrix inputs must share one dimension");
    }
  }
  check_domain(spec, rows, cols);

  KernelMatrix m{spec, rows.size(), cols.size(), std::vector<double>(rows.size() * cols.size())};
  const std::vector<Prepared> prow = prepare(spec, rows);
  const std::vector<Prepared> pcol = prepare(spec, cols);

  parallel_for(rows.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      double* out = m.values.data() + r * m.cols;
      for (std::size_t c = 0; c < m.cols; ++c) {
        switch (spec.kind()) {
          case KernelKind::Linear: out[c] = linear(rows[r], cols[c]); break;
          case KernelKind::Rbf:
            out[c] = std::exp(-*spec.gamma() * squared_distance(rows[r], cols[c]));
            break;
          case KernelKind::Gmm: out[c] = min_max_ratio(prow[r].t, pcol[c].t); break;
          case KernelKind::Ngmm: out[c] = ngmm_of_gint(intersection(prow[r].t, pcol[c].t)); break;
          case KernelKind::Gint: out[c] = intersection(prow[r].t, pcol[c].t); break;
        }
      }
    }
  });
  return m;
}

}  // namespace gint
