#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mwp {

// Named sparse feature vector; absent names count as 0.
using FeatureVec = std::vector<std::pair<std::string, double>>;

// Regularized linear classifier over named features. Multiclass models
// use a softmax link, single-class models a logistic link (the lone
// class plays "positive"). Weights are plain text on disk:
//   class feature-name weight
// with "__bias__" for the intercept; feature-name strings are part of
// the format contract.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<std::string> classes, std::vector<std::string> feature_names);

  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  bool binary() const { return classes_.size() == 1; }

  double weight(const std::string& cls, const std::string& feature) const;
  void set_weight(const std::string& cls, const std::string& feature, double w);

  // Calibrated class probabilities; softmax over classes, or
  // [P(positive)] for binary models. Unknown feature names raise
  // ContractError (model/extractor mismatch).
  std::vector<double> probabilities(const FeatureVec& x) const;
  std::pair<int, std::vector<double>> predict(const FeatureVec& x) const;

  std::string to_text() const;
  static LinearModel from_text(const std::string& text);
  void save(const std::string& path) const;
  static LinearModel load(const std::string& path);

 private:
  double raw_score(size_t cls_idx, const FeatureVec& x) const;

  std::vector<std::string> classes_;
  std::vector<std::string> feature_names_;
  std::map<std::string, std::map<std::string, double>> weights_;  // class -> feature -> w
};

struct TrainConfig {
  int epochs = 800;
  double learning_rate = 0.5;
  double l2 = 1e-3;
};

struct TrainExample {
  FeatureVec features;
  std::string label;
};

// Deterministic full-batch gradient training (zero init, fixed epoch
// count and step size). `classes` fixes the class order; a single class
// trains a binary logistic model with labels equal/not-equal to it.
LinearModel train_linear(const std::vector<TrainExample>& examples,
                         const std::vector<std::string>& classes, const TrainConfig& cfg);

}  // namespace mwp
