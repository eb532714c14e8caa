// Acceptance suite: end-to-end gates over the bundled corpus, one
// pass/fail line per criterion. Exits nonzero if any gate fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "mwp/learn.hpp"
#include "mwp/metrics.hpp"
#include "mwp/noise.hpp"

using namespace mwp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("criterion %d %s: %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
  if (!pass) ++failures;
}

std::string asset_dir() {
  if (const char* env = std::getenv("MWP_ASSETS"); env && *env) return env;
  return MWP_BUNDLED_ASSET_DIR;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const MWProblem& problem_by_id(const Dataset& ds, const std::string& id) {
  for (const auto& p : ds.problems)
    if (p.id == id) return p;
  throw std::runtime_error("missing fixture " + id);
}

bool quan_value_present(const FactSet& facts, const Rational& value) {
  for (int idx : facts.by_pred("quan"))
    if (facts.facts()[idx].value && *facts.facts()[idx].value == value) return true;
  return false;
}

// criterion 1: the worked examples solve exactly, on the stated routes
void criterion_worked_examples(const Pipeline& pipe, const Models& models, const Dataset& examples) {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;

  SolveResult walk = pipe.solve(problem_by_id(examples, "walk"), models);
  if (!(walk.answer == Rational(22))) {
    ok = false;
    detail += " walk=" + walk.answer.str();
  }

  SolveResult pack = pipe.solve(problem_by_id(examples, "pack"), models);
  bool pack_ok = pack.answer == Rational(20) && pack.type == SolutionType::Division &&
                 pack.analysis.facts.quan_value(pack.call.first) == Rational(100) &&
                 pack.analysis.facts.quan_value(pack.call.second) == Rational(5);
  if (!pack_ok) {
    ok = false;
    detail += " pack=" + pack.answer.str() + "/" + to_string(pack.type);
  }

  SolveResult sandwiches = pipe.solve(problem_by_id(examples, "sandwiches"), models);
  bool sandwiches_ok = sandwiches.answer == Rational(5, 2) && sandwiches.type == SolutionType::Sum &&
                 quan_value_present(sandwiches.analysis.facts, Rational(3, 2)) &&
                 quan_value_present(sandwiches.analysis.facts, Rational(1)) &&
                 quan_value_present(sandwiches.analysis.facts, Rational(1, 2));
  if (!sandwiches_ok) {
    ok = false;
    detail += " sandwiches=" + sandwiches.answer.str() + "/" + to_string(sandwiches.type);
  }

  SolveResult flowers = pipe.solve(problem_by_id(examples, "flowers"), models);
  bool flowers_ok = flowers.answer == Rational(5) && flowers.type == SolutionType::Addition &&
                 ((flowers.call.first == "q1" && flowers.call.second == "q2") ||
                  (flowers.call.first == "q2" && flowers.call.second == "q1"));
  if (!flowers_ok) {
    ok = false;
    detail += " flowers=" + flowers.answer.str() + "/" + to_string(flowers.type);
  }

  SolveResult balloons = pipe.solve(problem_by_id(examples, "balloons"), models);
  if (!(balloons.answer == Rational(17)) || balloons.answer == Rational(22)) {
    ok = false;
    detail += " balloons=" + balloons.answer.str();
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    ok = false;
    detail += " runtime=" + std::to_string(elapsed) + "s";
  }
  report(1, ok,
         "worked examples (walk=22, pack=20 Division(100,5), sandwiches=2.5 Sum with derived "
         "1.5/1/0.5, flowers=5 Addition{q1,q2}, balloons=17) in under 1s" +
             (detail.empty() ? "" : " --" + detail));
}

// criterion 2: operand decoding equals brute force on the whole corpus
void criterion_decode_oracle(const Pipeline& pipe, const Models& models, const Dataset& micro) {
  int checked = 0, agreed = 0;
  int per_class[kSolutionTypeCount] = {0};
  int max_n = 0;
  for (const auto& p : micro.problems) {
    AnalyzedProblem a = pipe.analyze(p);
    auto label = weak_label(p, a, pipe);
    if (label) per_class[static_cast<int>(label->type)]++;
    int n = static_cast<int>(a.extraction.quantities.size());
    max_n = std::max(max_n, n);
    if (n < 2) continue;
    for (SolutionType s : {SolutionType::Addition, SolutionType::Subtraction,
                           SolutionType::Multiplication, SolutionType::Division}) {
      auto probs = operand_probabilities(a.extraction, s, models.operand, pipe.lexicon());
      OperandConfig got = select_operands(a.extraction, s, models.operand, models.relation_prior,
                                          pipe.lexicon());
      // brute-force argmax over all (pair, r) configurations
      OperandConfig best;
      double best_score = -1;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const Rational& vi = a.extraction.quantities[i].value;
          const Rational& vj = a.extraction.quantities[j].value;
          std::vector<std::tuple<int, int, int>> orders;
          if (vi == vj)
            orders = {{i, j, 0}};
          else if (vi > vj)
            orders = {{i, j, 1}, {j, i, -1}};
          else
            orders = {{j, i, 1}, {i, j, -1}};
          for (auto [first, second, r] : orders) {
            double score = models.relation_prior.p(s, r);
            for (int k = 0; k < n; ++k)
              score *= (k == first || k == second) ? probs[k] : 1 - probs[k];
            if (score > best_score) {
              best_score = score;
              best.first = first;
              best.second = second;
              best.r = r;
            }
          }
        }
      ++checked;
      if (got.first == best.first && got.second == best.second && got.r == best.r) ++agreed;
    }
  }
  bool coverage = micro.problems.size() >= 36 && max_n >= 6;
  for (int c : per_class) coverage = coverage && c >= 6;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "operand decode agrees with brute force on %d/%d decodes (%zu problems, max n=%d)",
                agreed, checked, micro.problems.size(), max_n);
  report(2, coverage && checked > 0 && agreed == checked, buf);
}

// criterion 3: weak-supervision closed loop and training accuracy
void criterion_closed_loop(const Pipeline& pipe, const Dataset& micro) {
  auto start = Clock::now();
  bool labels_ok = true;
  for (const auto& p : micro.problems) {
    AnalyzedProblem a = pipe.analyze(p);
    auto label = weak_label(p, a, pipe);
    if (!label) {
      labels_ok = false;
      continue;
    }
    Rational value;
    if (label->type == SolutionType::Sum)
      value = eval_utility(transform_question(a.extraction, SolutionType::Sum, nullptr), a.facts);
    else if (label->type == SolutionType::TvqF)
      value = eval_tvqf(a.extraction.quantities);
    else
      value = apply_arithmetic(label->type, a.extraction.quantities[label->config->first].value,
                               a.extraction.quantities[label->config->second].value);
    if (!(value == p.answer)) labels_ok = false;
  }
  Models models = train(micro, pipe);
  Report report_ = evaluate(micro, models, pipe);
  double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "pseudo-labels re-execute to gold, train+eval accuracy=%.3f in %.1fs",
                report_.accuracy(), elapsed);
  report(3, labels_ok && report_.accuracy() == 1.0 && elapsed < 30.0, buf);
}

// criterion 4: noisy variants of every corpus problem still solve
void criterion_noise_robustness(const Pipeline& pipe, const Models& models, const Dataset& micro) {
  int total = 0, solved = 0;
  for (NoiseKind kind : {NoiseKind::NewSubject, NoiseKind::NewEntity, NoiseKind::NewModifier}) {
    Dataset noisy = noisify_dataset(micro, pipe, kind, 7);
    Report r = evaluate(noisy, models, pipe);
    total += r.total;
    solved += r.correct();
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "noisy variants solve to the original answer: %d/%d", solved,
                total);
  report(4, total == 3 * static_cast<int>(micro.problems.size()) && solved == total, buf);
}

// criterion 5: perplexity identities, fixtures and monotonicity
void criterion_perplexity(const Pipeline& pipe, const Dataset& micro) {
  bool ok = true;
  std::string detail;

  std::mt19937 rng(99);
  for (int i = 0; i < 1000; ++i) {
    double a = (1.0 + double(rng() % 999999)) / 1000000.0;
    if (std::abs(perplexity_value(a) - 1.0 / a) > 1e-12 * (1.0 / a)) ok = false;
  }

  Dataset one = dataset_from_string(
      R"({"id":"a","body":"Tom bought 2 apples and 3 pears.","question":"How many fruits did Tom buy?","answer":"5"})"
      "\n",
      "one");
  if (!(perplexity(one, pipe).pp == Rational(1))) {
    ok = false;
    detail += " single-problem-pp";
  }

  Dataset ordered;
  for (const auto& p : micro.problems)
    if (p.id == "sub4" || p.id == "sub8" || p.id == "sub9") ordered.problems.push_back(p);
  if (!(ordered.problems.size() == 3 && perplexity(ordered, pipe).pp == Rational(6))) {
    ok = false;
    detail += " ordered-pp";
  }

  Rational before = perplexity(micro, pipe).pp;
  Dataset augmented = micro;
  for (NoiseKind kind : {NoiseKind::NewSubject, NoiseKind::NewEntity, NoiseKind::NewModifier})
    for (auto& v : noisify_dataset(micro, pipe, kind, 7).problems)
      augmented.problems.push_back(std::move(v));
  Rational after = perplexity(augmented, pipe).pp;
  if (!(after > before)) {
    ok = false;
    detail += " monotonicity";
  }

  // external benchmark files, when supplied, must reproduce the reported values
  std::string external = std::getenv("MWP_EXTERNAL_DATA") ? std::getenv("MWP_EXTERNAL_DATA") : "";
  std::string external_note = "; external datasets not present, reference check skipped";
  if (!external.empty()) {
    external_note = "; external:";
    const std::pair<const char*, double> expected[] = {
        {"ai2", 4.46}, {"il", 8.32}, {"oss", 7.42}, {"nds", 18.83}};
    for (auto [name, pp_expected] : expected) {
      std::string path = external + "/" + name + ".jsonl";
      std::ifstream probe(path);
      if (!probe) continue;
      double pp = perplexity(load_dataset(path), pipe).pp.to_double();
      bool match = std::abs(pp - pp_expected) <= 0.01;
      if (!match) ok = false;
      char buf[64];
      std::snprintf(buf, sizeof(buf), " %s=%.2f", name, pp);
      external_note += buf;
    }
  }
  report(5, ok,
         "perplexity: PP=1/A to 1e-12 on 1000 draws, fixtures PP=1 and PP=6 exact, strict "
         "increase under noise" +
             detail + external_note);
}

// criterion 6: inference engine properties
void criterion_inference_properties(const Pipeline& pipe) {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(31);
  const char* preds[] = {"p", "q", "r"};
  const char* consts[] = {"a", "b", "c", "d"};
  auto rules = parse_rules("p(?x,?y) & q(?y) => r(?x)\nr(?x) => q(?x)");

  int order_checked = 0;
  for (int round = 0; round < 100; ++round) {
    std::vector<Fact> facts;
    int n = 1 + int(rng() % 12);
    for (int i = 0; i < n; ++i) {
      int arity = 1 + int(rng() % 2);
      std::vector<Term> args;
      for (int a = 0; a < arity; ++a) args.push_back(Term::constant(consts[rng() % 4]));
      facts.push_back(make_fact(preds[rng() % 3], std::move(args)));
    }
    FactSet forward;
    for (const auto& f : facts) forward.insert(f);
    FactSet once = saturate(forward, rules);
    // monotone
    for (const auto& f : forward.facts())
      if (!once.contains(f)) ok = false;
    // idempotent
    if (!(saturate(once, rules) == once)) ok = false;
    // insertion-order invariant as a set
    FactSet backward;
    for (auto it = facts.rbegin(); it != facts.rend(); ++it) backward.insert(*it);
    if (!(saturate(backward, rules) == once)) ok = false;
    ++order_checked;
  }
  if (!ok) detail += " saturation-properties";

  // unify agrees with exhaustive tuple enumeration on sets of <= 20 facts
  bool unify_ok = true;
  for (int round = 0; round < 100; ++round) {
    FactSet fs;
    int n = 1 + int(rng() % 20);
    for (int i = 0; i < n; ++i) {
      int arity = 1 + int(rng() % 2);
      std::vector<Term> args;
      for (int a = 0; a < arity; ++a) args.push_back(Term::constant(consts[rng() % 4]));
      fs.insert(make_fact(preds[rng() % 3], std::move(args)));
    }
    std::vector<Fact> pattern;
    int k = 1 + int(rng() % 3);
    const char* vars[] = {"x", "y"};
    for (int c = 0; c < k; ++c) {
      int arity = 1 + int(rng() % 2);
      std::vector<Term> args;
      for (int a = 0; a < arity; ++a)
        args.push_back(rng() % 2 ? Term::match_var(vars[rng() % 2])
                                 : Term::constant(consts[rng() % 4]));
      pattern.push_back(make_fact(preds[rng() % 3], std::move(args)));
    }
    size_t got = unify(std::span(pattern), fs).size();
    // enumeration over every fact tuple
    size_t expected = 0;
    std::vector<size_t> idx(k, 0);
    while (true) {
      Bindings b;
      bool match = true;
      for (int c = 0; c < k && match; ++c) {
        const Fact& f = fs.facts()[idx[c]];
        const Fact& p = pattern[c];
        if (f.pred != p.pred || f.args.size() != p.args.size()) {
          match = false;
          break;
        }
        for (size_t a = 0; a < p.args.size() && match; ++a) {
          if (p.args[a].kind == Term::MatchVar) {
            auto it = b.find(p.args[a].text);
            if (it == b.end())
              b.emplace(p.args[a].text, f.args[a]);
            else if (!(it->second == f.args[a]))
              match = false;
          } else if (!(p.args[a] == f.args[a])) {
            match = false;
          }
        }
      }
      if (match) ++expected;
      int d = 0;
      while (d < k && ++idx[d] == fs.size()) idx[d++] = 0;
      if (d == k) break;
    }
    if (got != expected) unify_ok = false;
  }
  if (!unify_ok) {
    ok = false;
    detail += " unify-enumeration";
  }

  // the divergence budget fires on a deliberately looping rule
  bool budget_ok = false;
  try {
    auto looping = parse_rules("quan(?q,#,x) => quan($q,#,x)=quan(?q,#,x)+1");
    FactSet facts;
    facts.insert(parse_fact_text("quan(q1,#,x)=1"));
    saturate(facts, looping, 500);
  } catch (const InferenceError&) {
    budget_ok = true;
  }
  if (!budget_ok) {
    ok = false;
    detail += " divergence-budget";
  }
  report(6, ok,
         "saturation idempotent/monotone/order-invariant on 100 random fact sets, unify matches "
         "enumeration, divergence budget fires" +
             detail);
}

// criterion 7: byte-identical retraining and evaluation
void criterion_determinism(const Pipeline& pipe, const Dataset& micro) {
  Models a = train(micro, pipe);
  Models b = train(micro, pipe);
  bool models_equal = a.sti.to_text() == b.sti.to_text() &&
                      a.operand.to_text() == b.operand.to_text() &&
                      a.relation_prior.to_text() == b.relation_prior.to_text() &&
                      a.template_priors == b.template_priors;
  std::string ra = evaluate(micro, a, pipe).to_text();
  std::string rb = evaluate(micro, b, pipe).to_text();
  report(7, models_equal && ra == rb, "two train+eval runs produce byte-identical models and reports");
}

// criterion 8: the 9-cell time encoding table
void criterion_time_table(const Pipeline&) {
  struct Cell {
    Tense t;
    Aspect a;
    int expected;
  };
  const Cell cells[] = {
      {Tense::Past, Aspect::Perfect, 1},    {Tense::Past, Aspect::Simple, 2},
      {Tense::Past, Aspect::Progressive, 3}, {Tense::Present, Aspect::Perfect, 3},
      {Tense::Present, Aspect::Simple, 4},  {Tense::Present, Aspect::Progressive, 5},
      {Tense::Future, Aspect::Perfect, 5},  {Tense::Future, Aspect::Simple, 6},
      {Tense::Future, Aspect::Progressive, 7},
  };
  bool ok = true;
  for (const auto& c : cells)
    if (derive_time(c.t, c.a) != c.expected) ok = false;
  report(8, ok, "all 9 tense/aspect cells match the 2/4/6 +/- 1 assignment");
}

}  // namespace

int main() {
  PipelineConfig cfg;
  cfg.asset_dir = asset_dir();
  Pipeline pipe(cfg);
  Dataset micro = load_dataset(pipe.asset_dir() + "/micro_corpus.jsonl");
  Dataset examples = load_dataset(pipe.asset_dir() + "/examples.jsonl");
  Models models = train(micro, pipe);

  criterion_worked_examples(pipe, models, examples);
  criterion_decode_oracle(pipe, models, micro);
  criterion_closed_loop(pipe, micro);
  criterion_noise_robustness(pipe, models, micro);
  criterion_perplexity(pipe, micro);
  criterion_inference_properties(pipe);
  criterion_determinism(pipe, micro);
  criterion_time_table(pipe);

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
