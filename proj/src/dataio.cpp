#include "gint/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace gint {
namespace {

struct RawLine {
  int label = 0;
  std::vector<Entry> entries;  // 0-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t pos = 0;
  while (pos < rest.size() && is_space(rest[pos])) ++pos;
  std::size_t end = pos;
  while (end < rest.size() && !is_space(rest[end])) ++end;
  std::string_view token = rest.substr(pos, end - pos);
  rest.remove_prefix(end);
  return token;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty() || text.front() == '+') return false;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, out);
  return ec == std::errc() && ptr == last;
}

RawLine parse_line(std::string_view line, std::size_t line_no) {
  RawLine raw;
  const std::string_view label = next_token(line);
  if (label.empty()) throw ParseError(line_no, "missing label");
  if (!parse_number(label, raw.label)) {
    throw ParseError(line_no, "label '" + std::string(label) + "' is not an integer");
  }
  for (std::string_view token = next_token(line); !token.empty(); token = next_token(line)) {
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "expected <index>:<value>, got '" + std::string(token) + "'");
    }
    std::size_t index = 0;
    double value = 0.0;
    if (!parse_number(token.substr(0, colon), index) || index == 0) {
      throw ParseError(line_no, "bad feature index in '" + std::string(token) + "'");
    }
    if (!parse_number(token.substr(colon + 1), value)) {
      throw ParseError(line_no, "bad feature value in '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
      throw ParseError(line_no, "non-finite value in '" + std::string(token) + "'");
    }
    if (!raw.entries.empty() && index - 1 <= raw.entries.back().index) {
      throw ParseError(line_no, "feature indices must be strictly increasing");
    }
    raw.entries.push_back({index - 1, value});
  }
  return raw;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

LabeledDataset parse_sparse_dataset(std::istream& in, std::optional<std::size_t> dim_override) {
  std::vector<RawLine> lines;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    RawLine raw = parse_line(line, line_no);
    if (!raw.entries.empty()) max_index = std::max(max_index, raw.entries.back().index + 1);
    lines.push_back(std::move(raw));
  }
  if (in.bad()) throw Error("read error after line " + std::to_string(line_no));
  if (lines.empty()) throw Error("dataset is empty");

  std::size_t dim = std::max<std::size_t>(max_index, 1);
  if (dim_override) {
    if (*dim_override < max_index) {
      throw Error("dimension override " + std::to_string(*dim_override) +
                  " is smaller than the largest index " + std::to_string(max_index));
    }
    if (*dim_override == 0) throw Error("dimension override must be positive");
    dim = *dim_override;
  }

  std::vector<SparseVector> vectors;
  std::vector<int> labels;
  vectors.reserve(lines.size());
  labels.reserve(lines.size());
  for (RawLine& raw : lines) {
    vectors.emplace_back(dim, std::move(raw.entries));
    labels.push_back(raw.label);
  }
  return LabeledDataset(std::move(vectors), std::move(labels));
}

LabeledDataset read_sparse_dataset(const std::filesystem::path& path,
                                   std::optional<std::size_t> dim_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return parse_sparse_dataset(in, dim_override);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

void format_sparse_dataset(const LabeledDataset& dataset, std::ostream& out) {
  std::string line;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    line = std::to_string(dataset.label(i));
    for (const Entry& e : dataset.vector(i).entries()) {
      line += ' ';
      line += std::to_string(e.index + 1);
      line += ':';
      line += format_real(e.value);
    }
    line += '\n';
    out << line;
  }
}

void write_sparse_dataset(const LabeledDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  format_sparse_dataset(dataset, out);
  finish_write(out, path);
}

void format_precomputed_kernel(const KernelMatrix& matrix, std::span<const int> labels,
                               std::ostream& out) {
  if (labels.size() != matrix.rows) {
    throw Error("kernel matrix has " + std::to_string(matrix.rows) + " rows but " +
                std::to_string(labels.size()) + " labels");
  }
  if (matrix.values.size() != matrix.rows * matrix.cols) {
    throw Error("kernel matrix storage does not match its shape");
  }
  std::string line;
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    line = std::to_string(labels[r]);
    line += " 0:";
    line += std::to_string(r + 1);
    for (std::size_t c = 0; c < matrix.cols; ++c) {
      line += ' ';
      line += std::to_string(c + 1);
      line += ':';
      line += format_real(matrix.at(r, c));
    }
    line += '\n';
    out << line;
  }
}

void write_precomputed_kernel(const KernelMatrix& matrix, std::span<const int> labels,
                              const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  format_precomputed_kernel(matrix, labels, out);
  finish_write(out, path);
}

}  // namespace gint
