#pragma once

#include <array>
#include <string>

#include "mwp/corpus.hpp"
#include "mwp/model.hpp"
#include "mwp/quantity.hpp"
#include "mwp/solution_type.hpp"

namespace mwp {

struct StiConfig {
  // whether "together" joins the total/in-all/altogether/sum keyword set
  bool together_keyword = false;
};

// The 26 binary solution-type features, in enumeration order.
struct StiFeatures {
  std::array<bool, 26> f{};

  bool operator[](int one_based) const { return f[one_based - 1]; }
  FeatureVec to_features() const;  // names "f1".."f26"
};

const std::vector<std::string>& sti_feature_names();

StiFeatures extract_sti_features(const Extraction& ex, const Annotation& ann,
                                 const StiConfig& cfg = {});

// Argmax class under the model with deterministic tie-break by the fixed
// class order Addition < Subtraction < Multiplication < Division < Sum
// < TVQ-F. Scores come back in that same order.
std::pair<SolutionType, std::array<double, kSolutionTypeCount>> predict_solution_type(
    const StiFeatures& features, const LinearModel& model);

}  // namespace mwp
