#pragma once

#include <string>
#include <vector>

#include "mwp/model.hpp"
#include "mwp/quantity.hpp"
#include "mwp/rational.hpp"
#include "mwp/solution_type.hpp"

namespace mwp {

// Decode target of operand selection: indicators over the n quantities
// plus the order relation r between the two chosen operands
// (first <,=,> second for r = -1, 0, 1).
struct OperandConfig {
  std::vector<bool> selected;
  int r = 0;
  int first = -1;  // index into Extraction::quantities
  int second = -1;

  std::string first_id(const Extraction& ex) const { return ex.quantities.at(first).id; }
  std::string second_id(const Extraction& ex) const { return ex.quantities.at(second).id; }
};

// Add-one smoothed relative frequency table P(r|s).
struct RelationPrior {
  // row per solution type, columns r = -1, 0, 1
  double table[kSolutionTypeCount][3];

  RelationPrior();
  double p(SolutionType s, int r) const { return table[static_cast<int>(s)][r + 1]; }
  std::string to_text() const;
  static RelationPrior from_text(const std::string& text);
};

// The operand feature extractor: 11 question-independent features (four
// solution-type indicators, qmap membership, value==1, five n-bucket
// indicators) and 14 question-matching features (entity/verb match and
// entailment, nsubj existence and tri-state match, existence+match for
// modifier, place, temporal and xcomp). The tri-state nsubj match is
// encoded as three mutually exclusive indicator columns.
FeatureVec extract_operand_features(const Quantity& q, const QuestionQuantity& q0,
                                    const Extraction& ex, SolutionType s, const Lexicon& lex);

// Names of every feature column the extractor can emit (model contract).
const std::vector<std::string>& operand_feature_names();

// P(r|s) * prod_i P(o_i | features), with P(o=false) = 1 - P(o=true).
double score_config(const OperandConfig& config, const std::vector<double>& select_probs,
                    const RelationPrior& prior, SolutionType s);

// Exhaustive argmax over all configurations with exactly two selected
// quantities and r consistent with the selected values. Ties break by
// lowest quantity-id pair, then r = 1 before 0 before -1 (enumeration
// order with strict improvement). n < 2 raises ContractError.
OperandConfig select_operands(const Extraction& ex, SolutionType s, const LinearModel& operand_model,
                              const RelationPrior& prior, const Lexicon& lex);

// Per-quantity selection probabilities under the operand model.
std::vector<double> operand_probabilities(const Extraction& ex, SolutionType s,
                                          const LinearModel& operand_model, const Lexicon& lex);

// All (pair, r) configurations in tie-break order, for decoding and for
// the weak labeler's exhaustive enumeration.
std::vector<OperandConfig> enumerate_configs(const Extraction& ex);

// The arithmetic result of applying an ordered operand pair.
Rational apply_arithmetic(SolutionType s, const Rational& a, const Rational& b);

}  // namespace mwp
