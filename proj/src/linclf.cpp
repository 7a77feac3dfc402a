#include "gint/linclf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gint/dataio.hpp"

namespace gint {
namespace {

constexpr std::string_view kModelMagic = "gint-linear-model";
constexpr int kModelVersion = 1;
constexpr int kMaxHalvings = 64;

// log(1 + exp(-m)) without overflow.
double logistic_loss(double margin) {
  return margin > 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

// 1 / (1 + exp(m)), the magnitude of d loss / d margin.
double sigmoid_neg(double margin) {
  if (margin >= 0.0) {
    const double e = std::exp(-margin);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(margin));
}

double affine(std::span<const double> params, const SparseVector& x) {
  double s = params.back();
  for (const Entry& e : x.entries()) s += params[e.index] * e.value;
  return s;
}

std::vector<int> distinct_labels(const LabeledDataset& data) {
  std::vector<int> labels = data.labels();
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace

LogisticObjective::LogisticObjective(const LabeledDataset& data, std::vector<double> targets,
                                     double reg_c)
    : data_(&data), targets_(std::move(targets)), reg_c_(reg_c), dim_(data.dim()) {
  if (targets_.size() != data.size()) throw Error("one target per data point is required");
  if (!(reg_c > 0.0) || !std::isfinite(reg_c)) throw Error("C must be positive");
}

double LogisticObjective::value(std::span<const double> params) const {
  const double n = static_cast<double>(data_->size());
  double loss = 0.0;
  for (std::size_t i = 0; i < data_->size(); ++i) {
    loss += logistic_loss(targets_[i] * affine(params, data_->vector(i)));
  }
  double norm2 = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) norm2 += params[d] * params[d];
  return loss / n + norm2 / (2.0 * reg_c_ * n);
}

double LogisticObjective::value_and_gradient(std::span<const double> params,
                                             std::span<double> grad) const {
  const double n = static_cast<double>(data_->size());
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < data_->size(); ++i) {
    const SparseVector& x = data_->vector(i);
    const double y = targets_[i];
    const double margin = y * affine(params, x);
    loss += logistic_loss(margin);
    const double coef = -y * sigmoid_neg(margin) / n;
    for (const Entry& e : x.entries()) grad[e.index] += coef * e.value;
    grad[dim_] += coef;
  }
  double norm2 = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    norm2 += params[d] * params[d];
    grad[d] += params[d] / (reg_c_ * n);
  }
  return loss / n + norm2 / (2.0 * reg_c_ * n);
}

LinearModel::LinearModel(std::vector<int> labels, std::size_t dim, double reg_c,
                         std::vector<std::vector<double>> weights)
    : labels_(std::move(labels)), dim_(dim), reg_c_(reg_c), weights_(std::move(weights)) {
  if (labels_.size() < 2) throw Error("a linear model needs at least two classes");
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw Error("model labels must be strictly increasing");
  }
  if (weights_.size() != labels_.size()) throw Error("one weight vector per class is required");
  for (const auto& w : weights_) {
    if (w.size() != dim_ + 1) throw Error("weight vector length must be dim + 1");
  }
}

double LinearModel::score(std::size_t c, const SparseVector& x) const {
  return affine(weights_.at(c), x);
}

int LinearModel::predict(const SparseVector& x) const {
  std::size_t best = 0;
  double best_score = score(0, x);
  for (std::size_t c = 1; c < labels_.size(); ++c) {
    const double s = score(c, x);
    if (s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return labels_[best];
}

LinearModel train(const LabeledDataset& data, const TrainOptions& options, TrainTrace* trace) {
  if (options.epochs < 1) throw Error("epochs must be at least 1");
  if (!(options.step > 0.0)) throw Error("step must be positive");
  const std::vector<int> labels = distinct_labels(data);
  if (labels.size() < 2) throw Error("training data must contain at least two classes");

  const std::size_t dim = data.dim();
  std::vector<std::vector<double>> weights;
  if (trace) trace->objective.assign(labels.size(), {});

  std::vector<double> grad(dim + 1), trial(dim + 1);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    std::vector<double> targets(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      targets[i] = data.label(i) == labels[c] ? 1.0 : -1.0;
    }
    const LogisticObjective objective(data, std::move(targets), options.reg_c);
    std::vector<double> params(dim + 1, 0.0);
    double step = options.step;
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
      const double current = objective.value_and_gradient(params, grad);
      double next = current;
      for (int h = 0; h <= kMaxHalvings; ++h) {
        for (std::size_t d = 0; d <= dim; ++d) trial[d] = params[d] - step * grad[d];
        next = objective.value(trial);
        if (next <= current) break;
        step *= 0.5;
      }
      if (next <= current) params.swap(trial);
      else next = current;
      if (trace) trace->objective[c].push_back(next);
    }
    weights.push_back(std::move(params));
  }
  return LinearModel(labels, dim, options.reg_c, std::move(weights));
}

double evaluate(const LinearModel& model, const LabeledDataset& data) {
  if (data.dim() != model.dim()) {
    throw Error("data dimension " + std::to_string(data.dim()) + " does not match model dimension " +
                std::to_string(model.dim()));
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) correct += model.predict(data.vector(i)) == data.label(i);
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

void save_model(const LinearModel& model, std::ostream& out) {
  out << kModelMagic << " v" << kModelVersion << ' ' << model.num_classes() << ' ' << model.dim()
      << ' ' << format_real(model.reg_c()) << '\n';
  std::string line;
  for (std::size_t c = 0; c < model.num_classes(); ++c) {
    line = std::to_string(model.labels()[c]);
    for (double w : model.weights(c)) {
      line += ' ';
      line += format_real(w);
    }
    line += '\n';
    out << line;
  }
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  save_model(model, out);
  if (!out.flush()) throw Error("write to '" + path.string() + "' failed");
}

LinearModel load_model(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(1, "missing model header");
  std::istringstream hs(header);
  std::string magic, version;
  std::size_t classes = 0, dim = 0;
  double reg_c = 0.0;
  if (!(hs >> magic >> version >> classes >> dim >> reg_c) || magic != kModelMagic) {
    throw ParseError(1, "not a linear model header");
  }
  if (version != "v" + std::to_string(kModelVersion)) {
    throw ParseError(1, "unsupported model version '" + version + "'");
  }
  std::vector<int> labels;
  std::vector<std::vector<double>> weights;
  std::string line;
  for (std::size_t c = 0; c < classes; ++c) {
    if (!std::getline(in, line)) throw ParseError(c + 2, "missing class line");
    std::istringstream ls(line);
    int label = 0;
    if (!(ls >> label)) throw ParseError(c + 2, "missing class label");
    std::vector<double> w(dim + 1);
    for (double& x : w) {
      if (!(ls >> x)) throw ParseError(c + 2, "expected " + std::to_string(dim + 1) + " weights");
    }
    labels.push_back(label);
    weights.push_back(std::move(w));
  }
  return LinearModel(std::move(labels), dim, reg_c, std::move(weights));
}

LinearModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return load_model(in);
}

}  // namespace gint
