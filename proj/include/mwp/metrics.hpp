#pragma once

#include <map>
#include <string>
#include <vector>

#include "mwp/learn.hpp"
#include "mwp/pipeline.hpp"

namespace mwp {

enum class Outcome { Correct, AnnotationFailure, WrongType, WrongOperands, InferenceFailure };

const std::string& to_string(Outcome o);

struct ProblemTrace {
  std::string id;
  Outcome outcome = Outcome::Correct;
  std::string detail;
};

struct Report {
  int total = 0;
  std::map<std::string, int> outcome_counts;              // taxonomy is total over problems
  std::map<std::string, std::pair<int, int>> per_type;    // labeled type -> (correct, total)
  std::vector<ProblemTrace> traces;

  int correct() const;
  double accuracy() const;
  std::string to_text() const;  // human-readable plus a key=value block
};

// Runs the full pipeline per problem; an answer is correct when it
// matches gold within 1e-6 relative. Per-problem failures are recorded
// in the taxonomy, never raised.
Report evaluate(const Dataset& ds, const Models& models, const Pipeline& pipe);

struct TemplateStat {
  SolutionType type = SolutionType::Addition;
  int arity = 2;
  Rational prior = Rational(1);
};

// Expected accuracy of the template-prior random guesser on one problem
// with n quantities: prior / C(n,2) for commutative two-slot templates,
// prior / P(n,2) for ordered ones, prior / C(n,k) for Sum/TVQF
// templates of arity k.
Rational expected_accuracy(int n, const TemplateStat& tmpl);

// The perplexity-flavor formula 2^(-log2 A), literal floating form.
double perplexity_value(double accuracy);

struct PerplexityResult {
  Rational mean_accuracy;  // A
  Rational pp;             // 1/A, exact
  int counted = 0;
  int skipped = 0;  // problems without a pseudo-label
  std::map<std::string, Rational> template_priors;
};

// Dataset difficulty: templates and arities come from pseudo-labels,
// template priors are unsmoothed relative frequencies over the dataset.
PerplexityResult perplexity(const Dataset& ds, const Pipeline& pipe);

}  // namespace mwp
