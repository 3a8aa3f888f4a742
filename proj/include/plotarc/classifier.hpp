#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "plotarc/corpus.hpp"
#include "plotarc/error.hpp"
#include "plotarc/features.hpp"
#include "plotarc/parallel.hpp"
#include "plotarc/rng.hpp"

namespace plotarc {

using Row = std::vector<double>;

inline int sign_of(Label l) { return static_cast<int>(l); }

struct StandardizationParams {
  std::vector<double> means;
  std::vector<double> scales;

  std::size_t dimension() const { return means.size(); }

  static StandardizationParams identity(std::size_t dim) { return {Row(dim, 0.0), Row(dim, 1.0)}; }

  Row apply(std::span<const double> x) const {
    if (x.size() != means.size())
      throw DimensionError("expected " + std::to_string(means.size()) + " features, got " + std::to_string(x.size()));
    Row out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - means[j]) / scales[j];
    return out;
  }

  friend bool operator==(const StandardizationParams&, const StandardizationParams&) = default;
};

namespace detail {

inline std::size_t common_dimension(std::span<const Row> rows) {
  const std::size_t dim = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != dim) throw DimensionError("rows differ in dimension: " + std::to_string(dim) + " vs " + std::to_string(r.size()));
  return dim;
}

}  // namespace detail

// Per-dimension mean and population standard deviation. Dimensions whose
// deviation is below 1e-12 get scale 1.
inline StandardizationParams standardize_fit(std::span<const Row> rows) {
  if (rows.empty()) throw DimensionError("cannot fit standardization on an empty matrix");
  if (rows.size() < 2) throw DimensionError("standardization needs at least 2 rows");
  const std::size_t dim = detail::common_dimension(rows);
  const double n = static_cast<double>(rows.size());
  StandardizationParams p{Row(dim, 0.0), Row(dim, 1.0)};
  for (const auto& r : rows)
    for (std::size_t j = 0; j < dim; ++j) p.means[j] += r[j];
  for (double& m : p.means) m /= n;
  for (std::size_t j = 0; j < dim; ++j) {
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[j] - p.means[j]) * (r[j] - p.means[j]);
    const double sd = std::sqrt(ss / n);
    p.scales[j] = sd > 1e-12 ? sd : 1.0;
  }
  return p;
}

inline std::vector<Row> standardize(std::span<const Row> rows, const StandardizationParams& p) {
  std::vector<Row> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(p.apply(r));
  return out;
}

struct SvmHyperparams {
  double C = 1.0;
  std::size_t epochs = 200;
  std::uint64_t seed = 42;

  friend bool operator==(const SvmHyperparams&, const SvmHyperparams&) = default;
};

struct LinearModel {
  Row weights;
  double bias = 0.0;
  SvmHyperparams hyperparams;
  StandardizationParams standardization;

  // w . standardize(x) + b
  double decision_value(std::span<const double> x) const {
    const Row z = standardization.apply(x);
    if (z.size() != weights.size()) throw DimensionError("model and standardization dimensions differ");
    double s = bias;
    for (std::size_t j = 0; j < z.size(); ++j) s += weights[j] * z[j];
    return s;
  }

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

// Ties (decision value exactly 0) go to the happy class.
inline Label predict(const LinearModel& model, std::span<const double> x) {
  return model.decision_value(x) >= 0.0 ? Label::happy : Label::unhappy;
}

// (1/n) sum max(0, 1 - y (w.x + b)) + (lambda/2)(|w|^2 + b^2), lambda = 1/(C n).
inline double svm_objective(std::span<const Row> X, std::span<const Label> y, std::span<const double> w, double b,
                            double C) {
  const double n = static_cast<double>(X.size());
  const double lambda = 1.0 / (C * n);
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double s = b;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * X[i][j];
    loss += std::max(0.0, 1.0 - sign_of(y[i]) * s);
  }
  double norm2 = b * b;
  for (double v : w) norm2 += v * v;
  return loss / n + 0.5 * lambda * norm2;
}

// Objective of the averaged iterate after each epoch; index 0 is the zero model.
struct TrainTrace {
  std::vector<double> objective;
};

// Pegasos-style primal subgradient descent on already standardized rows.
// The bias is an extra coordinate with a constant input of 1 and shares the
// regularizer. Step size 1/(lambda t), one pass per epoch in a seeded order,
// iterates projected onto the ball of radius 1/sqrt(lambda). The returned
// model is the uniform average of all iterates, with identity standardization.
inline LinearModel train_linear_svm(std::span<const Row> X, std::span<const Label> y, const SvmHyperparams& hp,
                                    TrainTrace* trace = nullptr) {
  if (X.empty()) throw TrainingError("no training examples");
  if (X.size() != y.size()) throw DimensionError("feature rows and labels differ in length");
  if (!(hp.C > 0.0)) throw ConfigError("C must be positive");
  if (hp.epochs == 0) throw ConfigError("epochs must be positive");
  const std::size_t dim = detail::common_dimension(X);
  bool has_pos = false, has_neg = false;
  for (Label l : y) (l == Label::happy ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw TrainingError("training data contains a single class");

  const std::size_t n = X.size();
  const double lambda = 1.0 / (hp.C * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);
  Row w(dim, 0.0), avg(dim, 0.0);
  double b = 0.0, avg_b = 0.0;
  std::vector<std::size_t> order(n);
  Rng rng(hp.seed);
  std::uint64_t t = 0;
  if (trace) trace->objective = {svm_objective(X, y, avg, avg_b, hp.C)};

  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double yi = sign_of(y[i]);
      double s = b;
      for (std::size_t j = 0; j < dim; ++j) s += w[j] * X[i][j];
      const double shrink = 1.0 - eta * lambda;
      for (double& v : w) v *= shrink;
      b *= shrink;
      if (yi * s < 1.0) {
        for (std::size_t j = 0; j < dim; ++j) w[j] += eta * yi * X[i][j];
        b += eta * yi;
      }
      double norm2 = b * b;
      for (double v : w) norm2 += v * v;
      if (norm2 > radius * radius) {
        const double f = radius / std::sqrt(norm2);
        for (double& v : w) v *= f;
        b *= f;
      }
      const double k = 1.0 / static_cast<double>(t);
      for (std::size_t j = 0; j < dim; ++j) avg[j] += (w[j] - avg[j]) * k;
      avg_b += (b - avg_b) * k;
    }
    if (trace) trace->objective.push_back(svm_objective(X, y, avg, avg_b, hp.C));
  }
  return {std::move(avg), avg_b, hp, StandardizationParams::identity(dim)};
}

// Fits standardization on the raw rows, then trains on the standardized rows.
inline LinearModel fit_linear_svm(std::span<const Row> raw, std::span<const Label> y, const SvmHyperparams& hp) {
  StandardizationParams params = standardize_fit(raw);
  const auto z = standardize(raw, params);
  LinearModel model = train_linear_svm(z, y, hp);
  model.standardization = std::move(params);
  return model;
}

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

inline Confusion confusion(std::span<const Label> predictions, std::span<const Label> gold) {
  if (predictions.size() != gold.size()) throw DimensionError("predictions and gold labels differ in length");
  Confusion c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = predictions[i] == Label::happy, g = gold[i] == Label::happy;
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
  }
  return c;
}

// F1 of the happy class; 0 when precision + recall is 0 or undefined.
inline double f1_from(const Confusion& c) {
  const double denom = 2.0 * c.tp + c.fp + c.fn;
  return c.tp == 0 ? 0.0 : 2.0 * c.tp / denom;
}

inline double accuracy_from(const Confusion& c) {
  return c.total() == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

inline double f1_score(std::span<const Label> predictions, std::span<const Label> gold) {
  if (predictions.size() != gold.size()) throw DimensionError("predictions and gold labels differ in length");
  if (gold.empty()) throw DimensionError("f1 of an empty label sequence");
  return f1_from(confusion(predictions, gold));
}

inline double accuracy_score(std::span<const Label> predictions, std::span<const Label> gold) {
  if (predictions.size() != gold.size()) throw DimensionError("predictions and gold labels differ in length");
  if (gold.empty()) throw DimensionError("accuracy of an empty label sequence");
  return accuracy_from(confusion(predictions, gold));
}

// Stratified assignment: each class is shuffled (happy first, same stream)
// and dealt round-robin, the second class continuing where the first left
// off so fold sizes stay within one of each other.
inline std::vector<std::size_t> stratified_folds(std::span<const Label> labels, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  std::vector<std::size_t> happy, unhappy;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == Label::happy ? happy : unhappy).push_back(i);
  if (happy.size() < folds || unhappy.size() < folds)
    throw ConfigError("each class needs at least " + std::to_string(folds) + " members for " + std::to_string(folds) +
                      "-fold cross-validation (happy=" + std::to_string(happy.size()) +
                      ", unhappy=" + std::to_string(unhappy.size()) + ")");
  Rng rng(derive_seed(seed, 0x666f6c6473ULL));
  std::vector<std::size_t> fold_of(labels.size());
  std::size_t next = 0;
  for (auto* members : {&happy, &unhappy}) {
    rng.shuffle(std::span<std::size_t>(*members));
    for (std::size_t idx : *members) fold_of[idx] = next++ % folds;
  }
  return fold_of;
}

struct FoldMetrics {
  double f1 = 0.0;
  double accuracy = 0.0;
};

struct EvalMetrics {
  double f1 = 0.0;        // pooled out-of-fold predictions
  double accuracy = 0.0;  // pooled
  std::vector<FoldMetrics> per_fold;
  Confusion confusion;
  std::vector<std::size_t> fold_of;
  std::vector<Label> predictions;  // out-of-fold, by row
  std::vector<StandardizationParams> fold_standardization;
};

struct CvConfig {
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  double C = 1.0;
  std::size_t epochs = 200;
  std::size_t jobs = 1;
};

inline std::vector<Label> labels_of(std::span<const FeatureVector> rows) {
  std::vector<Label> y;
  y.reserve(rows.size());
  for (const auto& r : rows) y.push_back(r.label);
  return y;
}

// Cross-validation with a given fold assignment. Standardization is fitted on
// each training split only; fold f trains with seed derive_seed(seed, f + 1).
inline EvalMetrics cross_validate(std::span<const FeatureVector> rows, std::span<const std::size_t> fold_of,
                                  const CvConfig& cfg) {
  if (rows.size() != fold_of.size()) throw DimensionError("fold assignment length differs from row count");
  if (rows.empty()) throw ConfigError("cross-validation on an empty feature collection");
  std::size_t folds = 0;
  for (std::size_t f : fold_of) folds = std::max(folds, f + 1);
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  const std::size_t dim = rows.front().values.size();
  for (const auto& r : rows)
    if (r.values.size() != dim) throw DimensionError("feature vectors differ in dimension");

  const std::vector<Label> gold = labels_of(rows);
  EvalMetrics m;
  m.fold_of.assign(fold_of.begin(), fold_of.end());
  m.predictions.assign(rows.size(), Label::unhappy);
  m.per_fold.resize(folds);
  m.fold_standardization.resize(folds);

  parallel_for(cfg.jobs, folds, [&](std::size_t f) {
    std::vector<Row> train_x;
    std::vector<Label> train_y;
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (fold_of[i] == f) {
        test.push_back(i);
      } else {
        train_x.push_back(rows[i].values);
        train_y.push_back(gold[i]);
      }
    }
    if (test.empty()) throw ConfigError("fold " + std::to_string(f) + " is empty");
    const LinearModel model = fit_linear_svm(train_x, train_y, {cfg.C, cfg.epochs, derive_seed(cfg.seed, f + 1)});
    std::vector<Label> fold_pred, fold_gold;
    for (std::size_t i : test) {
      m.predictions[i] = predict(model, rows[i].values);
      fold_pred.push_back(m.predictions[i]);
      fold_gold.push_back(gold[i]);
    }
    const Confusion c = confusion(fold_pred, fold_gold);
    m.per_fold[f] = {f1_from(c), accuracy_from(c)};
    m.fold_standardization[f] = model.standardization;
  });

  m.confusion = confusion(m.predictions, gold);
  m.f1 = f1_from(m.confusion);
  m.accuracy = accuracy_from(m.confusion);
  return m;
}

inline EvalMetrics cross_validate(std::span<const FeatureVector> rows, const CvConfig& cfg) {
  const auto labels = labels_of(rows);
  const auto fold_of = stratified_folds(labels, cfg.folds, cfg.seed);
  return cross_validate(rows, fold_of, cfg);
}

}  // namespace plotarc
