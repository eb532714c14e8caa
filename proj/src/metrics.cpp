#include "mwp/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "mwp/error.hpp"

namespace mwp {

const std::string& to_string(Outcome o) {
  static const std::string names[] = {"correct", "annotation_failure", "wrong_type",
                                      "wrong_operands", "unification_failure"};
  return names[static_cast<int>(o)];
}

int Report::correct() const {
  auto it = outcome_counts.find(to_string(Outcome::Correct));
  return it == outcome_counts.end() ? 0 : it->second;
}

double Report::accuracy() const { return total == 0 ? 0.0 : double(correct()) / double(total); }

std::string Report::to_text() const {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "accuracy=%.3f\n", accuracy());
  out += buf;
  out += "total=" + std::to_string(total) + "\n";
  for (const auto& [name, count] : outcome_counts)
    out += name + "=" + std::to_string(count) + "\n";
  for (const auto& [type, stat] : per_type) {
    std::snprintf(buf, sizeof(buf), "type_accuracy %s %d/%d\n", type.c_str(), stat.first, stat.second);
    out += buf;
  }
  for (const auto& t : traces) {
    out += "problem " + t.id + " " + to_string(t.outcome);
    if (!t.detail.empty()) out += " (" + t.detail + ")";
    out += "\n";
  }
  return out;
}

Report evaluate(const Dataset& ds, const Models& models, const Pipeline& pipe) {
  static const Rational kEvalTolerance(1, 1000000);  // 1e-6 relative
  Report report;
  report.total = static_cast<int>(ds.problems.size());
  for (const auto& problem : ds.problems) {
    ProblemTrace trace;
    trace.id = problem.id;
    std::optional<AnalyzedProblem> analysis;
    try {
      analysis = pipe.analyze(problem);
    } catch (const Error& e) {
      trace.outcome = Outcome::AnnotationFailure;
      trace.detail = e.what();
      report.outcome_counts[to_string(trace.outcome)]++;
      report.traces.push_back(std::move(trace));
      continue;
    }
    std::optional<PseudoLabel> label = weak_label(problem, *analysis, pipe);
    std::string label_type = label ? to_string(label->type) : "";
    if (label) report.per_type[label_type].second++;

    try {
      SolveResult res = pipe.solve_analyzed(std::move(*analysis), models);
      if (Rational::close(res.answer, problem.answer, kEvalTolerance)) {
        trace.outcome = Outcome::Correct;
        if (label) report.per_type[label_type].first++;
      } else if (label && res.type != label->type) {
        trace.outcome = Outcome::WrongType;
        trace.detail = "predicted " + to_string(res.type) + ", labeled " + label_type;
      } else if (label) {
        trace.outcome = Outcome::WrongOperands;
        trace.detail = "answered " + res.answer.str() + ", gold " + problem.answer.str();
      } else {
        trace.outcome = Outcome::WrongType;
        trace.detail = "no consistent execution; answered " + res.answer.str();
      }
    } catch (const Error& e) {
      trace.outcome = Outcome::InferenceFailure;
      trace.detail = e.what();
    }
    report.outcome_counts[to_string(trace.outcome)]++;
    report.traces.push_back(std::move(trace));
  }
  return report;
}

Rational expected_accuracy(int n, const TemplateStat& tmpl) {
  if (n < 2) throw ValidationError("expected accuracy undefined for fewer than 2 quantities");
  auto comb = [](int n_, int k_) {
    Rational c(1);
    for (int i = 0; i < k_; ++i) c = c * Rational(n_ - i) / Rational(i + 1);
    return c;
  };
  switch (tmpl.type) {
    case SolutionType::Addition:
    case SolutionType::Multiplication:
      return tmpl.prior / comb(n, 2);
    case SolutionType::Subtraction:
    case SolutionType::Division:
      return tmpl.prior / (Rational(n) * Rational(n - 1));  // P(n,2)
    case SolutionType::Sum:
    case SolutionType::TvqF: {
      int k = std::min(std::max(tmpl.arity, 1), n);
      return tmpl.prior / comb(n, k);
    }
  }
  throw ContractError("unhandled template type");
}

double perplexity_value(double accuracy) {
  if (accuracy <= 0) throw ValidationError("perplexity undefined for non-positive accuracy");
  return std::exp2(-std::log2(accuracy));
}

PerplexityResult perplexity(const Dataset& ds, const Pipeline& pipe) {
  if (ds.problems.empty()) throw ValidationError("perplexity undefined on an empty dataset");
  PerplexityResult out;

  struct Labeled {
    TemplateId tmpl;
    int n;
  };
  std::vector<Labeled> labeled;
  std::map<std::string, std::pair<TemplateId, int>> template_counts;  // id -> (tmpl, count)
  for (const auto& problem : ds.problems) {
    try {
      AnalyzedProblem analysis = pipe.analyze(problem);
      auto label = weak_label(problem, analysis, pipe);
      if (!label) {
        ++out.skipped;
        continue;
      }
      labeled.push_back({label->template_id(), static_cast<int>(analysis.extraction.quantities.size())});
      auto& slot = template_counts[label->template_id().str()];
      slot.first = label->template_id();
      slot.second++;
    } catch (const Error&) {
      ++out.skipped;
    }
  }
  if (labeled.empty()) throw ValidationError("no labelable problems; perplexity undefined");

  std::map<std::string, Rational> priors;
  for (const auto& [key, slot] : template_counts)
    priors[key] = Rational(slot.second, static_cast<long long>(labeled.size()));
  out.template_priors = priors;

  Rational total(0);
  for (const auto& item : labeled) {
    TemplateStat stat{item.tmpl.type, item.tmpl.arity, priors.at(item.tmpl.str())};
    total += expected_accuracy(item.n, stat);
  }
  out.counted = static_cast<int>(labeled.size());
  out.mean_accuracy = total / Rational(out.counted);
  if (out.mean_accuracy.is_zero()) throw ValidationError("zero expected accuracy");
  out.pp = Rational(1) / out.mean_accuracy;
  return out;
}

}  // namespace mwp
