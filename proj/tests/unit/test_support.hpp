#pragma once

#include <string>

#include "mwp/learn.hpp"
#include "mwp/metrics.hpp"
#include "mwp/noise.hpp"

namespace mwp::test {

inline std::string asset_dir() {
  if (const char* env = std::getenv("MWP_ASSETS"); env && *env) return env;
  return MWP_BUNDLED_ASSET_DIR;
}

// One pipeline and one trained model set shared across test cases.
inline const Pipeline& pipeline() {
  static Pipeline pipe = [] {
    PipelineConfig cfg;
    cfg.asset_dir = asset_dir();
    return Pipeline(cfg);
  }();
  return pipe;
}

inline const Dataset& micro_corpus() {
  static Dataset ds = load_dataset(asset_dir() + "/micro_corpus.jsonl");
  return ds;
}

inline const Dataset& worked_examples() {
  static Dataset ds = load_dataset(asset_dir() + "/examples.jsonl");
  return ds;
}

inline const MWProblem& example(const std::string& id) {
  for (const auto& p : worked_examples().problems)
    if (p.id == id) return p;
  throw std::runtime_error("no bundled example: " + id);
}

inline const Models& trained_models() {
  static Models models = train(micro_corpus(), pipeline());
  return models;
}

}  // namespace mwp::test
