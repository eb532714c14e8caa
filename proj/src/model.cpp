#include "mwp/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

namespace {
const std::string kBias = "__bias__";

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}
}  // namespace

LinearModel::LinearModel(std::vector<std::string> classes, std::vector<std::string> feature_names)
    : classes_(std::move(classes)), feature_names_(std::move(feature_names)) {
  for (const auto& c : classes_) {
    auto& row = weights_[c];
    row[kBias] = 0.0;
    for (const auto& f : feature_names_) row[f] = 0.0;
  }
}

double LinearModel::weight(const std::string& cls, const std::string& feature) const {
  auto it = weights_.find(cls);
  if (it == weights_.end()) throw ContractError("model has no class '" + cls + "'");
  auto jt = it->second.find(feature);
  return jt == it->second.end() ? 0.0 : jt->second;
}

void LinearModel::set_weight(const std::string& cls, const std::string& feature, double w) {
  weights_[cls][feature] = w;
}

double LinearModel::raw_score(size_t cls_idx, const FeatureVec& x) const {
  const auto& row = weights_.at(classes_[cls_idx]);
  double s = row.at(kBias);
  for (const auto& [name, value] : x) {
    auto it = row.find(name);
    if (it == row.end())
      throw ContractError("feature '" + name + "' unknown to model (feature-name mismatch)");
    s += it->second * value;
  }
  return s;
}

std::vector<double> LinearModel::probabilities(const FeatureVec& x) const {
  if (classes_.empty()) throw ContractError("empty model");
  if (binary()) {
    double z = raw_score(0, x);
    return {1.0 / (1.0 + std::exp(-z))};
  }
  std::vector<double> scores(classes_.size());
  double mx = -1e300;
  for (size_t c = 0; c < classes_.size(); ++c) {
    scores[c] = raw_score(c, x);
    mx = std::max(mx, scores[c]);
  }
  double total = 0;
  for (auto& s : scores) {
    s = std::exp(s - mx);
    total += s;
  }
  for (auto& s : scores) s /= total;
  return scores;
}

std::pair<int, std::vector<double>> LinearModel::predict(const FeatureVec& x) const {
  auto probs = probabilities(x);
  int best = 0;
  for (size_t c = 1; c < probs.size(); ++c)
    if (probs[c] > probs[best]) best = static_cast<int>(c);
  return {best, probs};
}

std::string LinearModel::to_text() const {
  std::string out;
  for (const auto& c : classes_) {
    const auto& row = weights_.at(c);
    for (const auto& [feature, w] : row) out += c + " " + feature + " " + format_weight(w) + "\n";
  }
  return out;
}

LinearModel LinearModel::from_text(const std::string& text) {
  LinearModel m;
  std::set<std::string> feature_set;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_ws(line);
    if (cols.size() != 3) throw ParseError("model line needs 'class feature weight': " + line);
    char* end = nullptr;
    double w = std::strtod(cols[2].c_str(), &end);
    if (end == cols[2].c_str()) throw ParseError("bad weight in model line: " + line);
    if (!m.weights_.count(cols[0])) m.classes_.push_back(cols[0]);
    m.weights_[cols[0]][cols[1]] = w;
    if (cols[1] != kBias) feature_set.insert(cols[1]);
  }
  m.feature_names_.assign(feature_set.begin(), feature_set.end());
  if (m.classes_.empty()) throw ParseError("empty model file");
  return m;
}

void LinearModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file: " + path);
  out << to_text();
}

LinearModel LinearModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

LinearModel train_linear(const std::vector<TrainExample>& examples,
                         const std::vector<std::string>& classes, const TrainConfig& cfg) {
  if (classes.empty()) throw ContractError("train_linear needs at least one class");
  std::set<std::string> feature_set;
  for (const auto& ex : examples)
    for (const auto& [name, _] : ex.features) feature_set.insert(name);
  LinearModel model(classes, {feature_set.begin(), feature_set.end()});
  if (examples.empty()) return model;

  size_t k = classes.size();
  auto class_index = [&](const std::string& label) -> int {
    for (size_t c = 0; c < k; ++c)
      if (classes[c] == label) return static_cast<int>(c);
    if (k == 1) return -1;  // binary negative
    throw ContractError("label '" + label + "' not in class list");
  };
  std::vector<int> y;
  y.reserve(examples.size());
  for (const auto& ex : examples) y.push_back(class_index(ex.label));

  double n = static_cast<double>(examples.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // gradient of the (regularized) negative log-likelihood
    std::map<std::string, std::map<std::string, double>> grad;
    for (size_t i = 0; i < examples.size(); ++i) {
      auto probs = model.probabilities(examples[i].features);
      for (size_t c = 0; c < k; ++c) {
        double target = model.binary() ? (y[i] == 0 ? 1.0 : 0.0) : (y[i] == static_cast<int>(c) ? 1.0 : 0.0);
        double err = probs[c] - target;
        auto& row = grad[classes[c]];
        row["__bias__"] += err;
        for (const auto& [name, value] : examples[i].features) row[name] += err * value;
      }
    }
    for (const auto& [cls, row] : grad)
      for (const auto& [feature, g] : row) {
        double w = model.weight(cls, feature);
        double reg = feature == "__bias__" ? 0.0 : cfg.l2 * w;
        model.set_weight(cls, feature, w - cfg.learning_rate * (g / n + reg));
      }
  }
  return model;
}

}  // namespace mwp
