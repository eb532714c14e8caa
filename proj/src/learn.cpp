#include "mwp/learn.hpp"

#include <algorithm>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

namespace {

const Rational kLabelTolerance(1, 1000000000);  // 1e-9 relative

bool hits_gold(const Rational& value, const Rational& gold) {
  return Rational::close(value, gold, kLabelTolerance);
}

int sum_match_count(const UtilityCall& call, const FactSet& facts) {
  int matches = 0;
  for (const auto& b : unify(std::span(call.function_pattern), facts)) {
    if (!call.condition.empty() && unify(std::span(call.condition), facts, b).empty()) continue;
    ++matches;
  }
  return matches;
}

// TVQF candidate gate: a final-state reading needs a stative quantity
// or changes in both directions among the directly-related quantities.
bool tvqf_applicable(const Extraction& ex) {
  bool stative = false, pos = false, neg = false;
  for (const auto& q : ex.quantities) {
    if (q.relevance != 2) continue;
    if (q.action == VerbClass::Stative) stative = true;
    if (q.action == VerbClass::Positive) pos = true;
    if (q.action == VerbClass::Negative) neg = true;
  }
  return stative || (pos && neg);
}

}  // namespace

std::vector<PseudoLabel> weak_label_hits(const MWProblem& problem, const AnalyzedProblem& analysis,
                                         const Pipeline& pipe) {
  std::vector<PseudoLabel> hits;
  const Extraction& ex = analysis.extraction;

  auto add = [&](SolutionType type, std::optional<OperandConfig> config, int arity) {
    PseudoLabel label;
    label.problem_id = problem.id;
    label.type = type;
    label.config = std::move(config);
    label.arity = arity;
    label.answer = problem.answer;
    hits.push_back(std::move(label));
  };

  // preference order: Sum, TVQF, then the arithmetic types
  try {
    UtilityCall call = transform_question(ex, SolutionType::Sum, nullptr);
    Rational value = eval_utility(call, analysis.facts);
    if (hits_gold(value, problem.answer))
      add(SolutionType::Sum, std::nullopt, sum_match_count(call, analysis.facts));
  } catch (const Error&) {
  }
  if (tvqf_applicable(ex)) {
    try {
      Rational value = eval_tvqf(ex.quantities);
      if (hits_gold(value, problem.answer)) {
        int related = 0;
        for (const auto& q : ex.quantities)
          if (q.relevance == 2) ++related;
        add(SolutionType::TvqF, std::nullopt, related);
      }
    } catch (const Error&) {
    }
  }
  auto configs = enumerate_configs(ex);
  for (SolutionType s : {SolutionType::Addition, SolutionType::Subtraction,
                         SolutionType::Multiplication, SolutionType::Division}) {
    for (const auto& c : configs) {
      try {
        Rational value = apply_arithmetic(s, ex.quantities[c.first].value, ex.quantities[c.second].value);
        if (hits_gold(value, problem.answer)) add(s, c, 2);
      } catch (const ArithmeticError&) {
      }
    }
  }
  return hits;
}

std::optional<PseudoLabel> weak_label(const MWProblem& problem, const AnalyzedProblem& analysis,
                                      const Pipeline& pipe) {
  auto hits = weak_label_hits(problem, analysis, pipe);
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

std::string LabelReport::to_text() const {
  std::string out;
  out += "labelable " + std::to_string(labelable) + "\n";
  out += "unlabelable " + std::to_string(unlabelable) + "\n";
  for (const auto& [cls, count] : per_class) out += "class " + cls + " " + std::to_string(count) + "\n";
  for (const auto& id : unlabelable_ids) out += "unlabelable_id " + id + "\n";
  return out;
}

Models train(const Dataset& ds, const Pipeline& pipe, LabelReport* report) {
  if (ds.problems.empty()) throw ValidationError("cannot train on an empty dataset");
  LabelReport local;
  LabelReport& rep = report ? *report : local;

  std::vector<TrainExample> sti_examples;
  std::vector<TrainExample> operand_examples;
  double r_counts[kSolutionTypeCount][3];
  for (auto& row : r_counts)
    for (double& c : row) c = 1.0;  // add-one smoothing
  std::map<std::string, int> template_counts;

  for (const auto& problem : ds.problems) {
    std::optional<PseudoLabel> label;
    std::optional<AnalyzedProblem> analysis;
    try {
      analysis = pipe.analyze(problem);
      label = weak_label(problem, *analysis, pipe);
    } catch (const Error&) {
      label = std::nullopt;
    }
    if (!label) {
      ++rep.unlabelable;
      rep.unlabelable_ids.push_back(problem.id);
      continue;
    }
    ++rep.labelable;
    ++rep.per_class[to_string(label->type)];
    ++template_counts[label->template_id().str()];

    StiFeatures features = extract_sti_features(analysis->extraction, analysis->annotation,
                                                pipe.config().sti);
    sti_examples.push_back({features.to_features(), to_string(label->type)});

    if (label->config) {
      r_counts[static_cast<int>(label->type)][label->config->r + 1] += 1.0;
      const Extraction& ex = analysis->extraction;
      for (size_t i = 0; i < ex.quantities.size(); ++i) {
        auto fv = extract_operand_features(ex.quantities[i], ex.question, ex, label->type,
                                           pipe.lexicon());
        operand_examples.push_back({std::move(fv), label->config->selected[i] ? "selected" : "not"});
      }
    }
  }

  if (rep.labelable == 0) throw Error("no labelable problems in dataset '" + ds.name + "'");

  Models models;
  std::vector<std::string> classes;
  for (SolutionType s : all_solution_types()) classes.push_back(to_string(s));
  models.sti = train_linear(sti_examples, classes, pipe.config().train);
  models.operand = train_linear(operand_examples, {"selected"}, pipe.config().train);

  for (SolutionType s : all_solution_types()) {
    double total = 0;
    for (int r = 0; r < 3; ++r) total += r_counts[static_cast<int>(s)][r];
    for (int r = 0; r < 3; ++r)
      models.relation_prior.table[static_cast<int>(s)][r] = r_counts[static_cast<int>(s)][r] / total;
  }

  double total_templates = 0;
  for (const auto& [_, c] : template_counts) total_templates += c + 1;
  for (const auto& [tmpl, c] : template_counts)
    models.template_priors[tmpl] = (c + 1.0) / total_templates;

  return models;
}

}  // namespace mwp
