#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwp/annotate.hpp"
#include "mwp/corpus.hpp"
#include "mwp/inference.hpp"
#include "mwp/logicform.hpp"
#include "mwp/model.hpp"
#include "mwp/operands.hpp"
#include "mwp/sti.hpp"

namespace mwp {

struct PipelineConfig {
  std::string asset_dir;  // empty: MWP_ASSETS env var, then the bundled default
  StiConfig sti;
  TrainConfig train;
  int saturation_budget = 10000;
  unsigned seed = 1;

  // key = value lines; '#' comments
  static PipelineConfig from_file(const std::string& path);
  void apply_line(const std::string& key, const std::string& value);
};

std::string resolve_asset_dir(const std::string& configured);

// Trained parameters: solution-type model, operand model, relation
// prior and template priors. Stored as plain-text files in a directory.
struct Models {
  LinearModel sti;
  LinearModel operand;
  RelationPrior relation_prior;
  std::map<std::string, double> template_priors;  // "Addition/2" -> p

  void save(const std::string& dir) const;
  static Models load(const std::string& dir);
};

// Per-problem analysis shared by solving, labeling and evaluation.
struct AnalyzedProblem {
  Annotation annotation;
  Extraction extraction;
  FactSet base_facts;
  FactSet facts;  // after saturation
  SaturationTrace saturation;
};

struct SolveResult {
  Rational answer;
  SolutionType type = SolutionType::Addition;
  std::array<double, kSolutionTypeCount> type_scores{};
  std::optional<OperandConfig> operands;
  UtilityCall call;
  AnalyzedProblem analysis;

  std::string explain() const;  // logic-form text trace
};

// Owns the lexicon, annotator, rules and configuration; all solver
// stages hang off this context. Pure per-call state: safe to share
// across threads for distinct problems.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg = {});

  const Lexicon& lexicon() const { return *lexicon_; }
  Lexicon& lexicon() { return *lexicon_; }
  const Annotator& annotator() const { return *annotator_; }
  const std::vector<InferenceRule>& rules() const { return rules_; }
  const PipelineConfig& config() const { return cfg_; }
  const std::string& asset_dir() const { return asset_dir_; }

  // Uses the problem's own annotation when present, otherwise the
  // built-in annotator.
  AnalyzedProblem analyze(const MWProblem& problem) const;

  SolveResult solve(const MWProblem& problem, const Models& models) const;
  SolveResult solve_analyzed(AnalyzedProblem analysis, const Models& models) const;

 private:
  PipelineConfig cfg_;
  std::string asset_dir_;
  std::unique_ptr<Lexicon> lexicon_;
  std::unique_ptr<Annotator> annotator_;
  std::vector<InferenceRule> rules_;
};

}  // namespace mwp
