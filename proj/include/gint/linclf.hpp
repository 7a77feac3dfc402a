#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "gint/sparse.hpp"

namespace gint {

/**
 * L2-regularized logistic loss for one binary (one-vs-rest) problem:
 *
 *   f(w, b) = (1/n) sum_i log(1 + exp(-y_i (w.x_i + b))) + |w|^2 / (2 C n)
 *
 * i.e. the usual C-weighted objective 0.5|w|^2 + C sum_i loss_i divided by
 * C n. The bias is not regularized. Parameters are laid out as
 * [w_0 .. w_{dim-1}, b].
 */
class LogisticObjective {
 public:
  /// targets[i] must be +1 or -1.
  LogisticObjective(const LabeledDataset& data, std::vector<double> targets, double reg_c);

  std::size_t num_params() const noexcept { return dim_ + 1; }
  double value(std::span<const double> params) const;
  /// Writes the gradient into grad and returns the objective value.
  double value_and_gradient(std::span<const double> params, std::span<double> grad) const;

 private:
  const LabeledDataset* data_;
  std::vector<double> targets_;
  double reg_c_;
  std::size_t dim_;
};

class LinearModel {
 public:
  LinearModel(std::vector<int> labels, std::size_t dim, double reg_c,
              std::vector<std::vector<double>> weights);

  std::size_t num_classes() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  double reg_c() const noexcept { return reg_c_; }
  /// Class labels in ascending order; weights(c) belongs to labels()[c].
  const std::vector<int>& labels() const noexcept { return labels_; }
  /// dim() weights followed by the bias.
  std::span<const double> weights(std::size_t c) const { return weights_.at(c); }

  double score(std::size_t c, const SparseVector& x) const;
  /// Highest-scoring label; ties go to the smallest label.
  int predict(const SparseVector& x) const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  std::vector<int> labels_;
  std::size_t dim_;
  double reg_c_;
  std::vector<std::vector<double>> weights_;
};

struct TrainOptions {
  double reg_c = 1.0;
  int epochs = 200;
  double step = 0.5;
};

/// Objective value after each accepted step, per class.
struct TrainTrace {
  std::vector<std::vector<double>> objective;
};

/**
 * One-vs-rest full-batch gradient descent with a fixed epoch count. A step
 * that would raise the objective is halved until it does not, so each
 * class objective is non-increasing. Deterministic.
 *
 * Throws gint::Error with fewer than two classes, epochs < 1, or a
 * non-positive reg_c or step.
 */
LinearModel train(const LabeledDataset& data, const TrainOptions& options,
                  TrainTrace* trace = nullptr);

/// Fraction of correctly predicted points. Throws on dimension mismatch.
double evaluate(const LinearModel& model, const LabeledDataset& data);

// Text format: a versioned header line, then one line per class holding
// the label followed by dim weights and the bias.
void save_model(const LinearModel& model, std::ostream& out);
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(std::istream& in);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace gint
