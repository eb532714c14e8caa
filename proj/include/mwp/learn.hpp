#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwp/pipeline.hpp"

namespace mwp {

// Solution template: type plus operand arity ("Addition/2", "Sum/3").
struct TemplateId {
  SolutionType type = SolutionType::Addition;
  int arity = 2;
  std::string str() const { return to_string(type) + "/" + std::to_string(arity); }
};

// A (type, operand) execution consistent with the gold answer.
struct PseudoLabel {
  std::string problem_id;
  SolutionType type = SolutionType::Addition;
  std::optional<OperandConfig> config;  // arithmetic types only
  int arity = 2;                        // quantities the execution consumed
  Rational answer;

  TemplateId template_id() const { return {type, arity}; }
};

struct LabelReport {
  int labelable = 0;
  int unlabelable = 0;
  std::map<std::string, int> per_class;
  std::vector<std::string> unlabelable_ids;
  std::string to_text() const;
};

// Enumerates all six solution types (all operand pairs and orders for
// the arithmetic ones), retains executions matching the gold answer
// within 1e-9 relative tolerance, and disambiguates by the fixed
// preference Sum > TVQF > Addition > Subtraction > Multiplication >
// Division, then lowest-id pair, then r = 1 before 0 before -1. TVQF
// executions are candidates only when the directly-related quantities
// show state evolution (a stative present, or both action signs).
std::optional<PseudoLabel> weak_label(const MWProblem& problem, const AnalyzedProblem& analysis,
                                      const Pipeline& pipe);

// Every solution-type/operand execution that reproduces the answer, in
// preference order (first element is the chosen label).
std::vector<PseudoLabel> weak_label_hits(const MWProblem& problem, const AnalyzedProblem& analysis,
                                         const Pipeline& pipe);

// Weakly supervised training over a dataset: pseudo-labels from answers,
// then the solution-type model, operand model, relation prior and
// template priors. Deterministic for a fixed config.
Models train(const Dataset& ds, const Pipeline& pipe, LabelReport* report = nullptr);

}  // namespace mwp
