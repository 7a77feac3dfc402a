#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>

#include "gint/kernels.hpp"
#include "gint/sparse.hpp"

namespace gint {

// Sparse text format: `<label> <index>:<value> ...`, 1-based indices on disk.

/// Parses a dataset from a stream. Throws ParseError on malformed lines.
/// dim becomes the largest observed index, or dim_override when that is larger.
LabeledDataset parse_sparse_dataset(std::istream& in,
                                    std::optional<std::size_t> dim_override = std::nullopt);

LabeledDataset read_sparse_dataset(const std::filesystem::path& path,
                                   std::optional<std::size_t> dim_override = std::nullopt);

void format_sparse_dataset(const LabeledDataset& dataset, std::ostream& out);
void write_sparse_dataset(const LabeledDataset& dataset, const std::filesystem::path& path);

/// Precomputed-kernel rows: `<label> 0:<serial> 1:<K(x,x_1)> ...` with a
/// 1-based serial. One label per matrix row.
void format_precomputed_kernel(const KernelMatrix& matrix, std::span<const int> labels,
                               std::ostream& out);
void write_precomputed_kernel(const KernelMatrix& matrix, std::span<const int> labels,
                              const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double ("1" for 1.0).
std::string format_real(double value);

}  // namespace gint
