#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwp/logicform.hpp"
#include "mwp/quantity.hpp"

namespace mwp {

// Arithmetic expression over bound values, used in rule consequents:
// number literals, ?var references (bound to numeric terms), and the
// value of a fact matched by the antecedent (e.g. quan(?q,?u,?o)).
struct ValueExpr {
  enum Kind { Number, VarRef, FactValue, Binary };
  Kind kind = Number;
  Rational number;
  std::string var;
  Fact fact;
  char op = '+';
  std::vector<ValueExpr> kids;
};

struct ConsequentFact {
  Fact templ;
  std::optional<ValueExpr> value;
};

// antecedent => consequent, with ?vars bound by the antecedent and
// $vars freshly instantiated per application.
struct InferenceRule {
  std::string name;
  std::vector<Fact> antecedent;
  std::vector<ConsequentFact> consequents;
};

using Bindings = std::map<std::string, Term>;

// All bindings under which every conjunct matches some fact, in
// deterministic order (conjuncts left to right, facts in insertion
// order). `seed` pre-binds variables. When `entail` is given, a ground
// constant in the entity slot of a quan pattern also matches facts
// whose entity entails it.
std::vector<Bindings> unify(std::span<const Fact> pattern, const FactSet& facts,
                            const Bindings& seed = {}, const Lexicon* entail = nullptr);

struct SaturationTrace {
  // rule name -> facts it derived, in derivation order
  std::vector<std::pair<std::string, Fact>> derivations;
};

// Least fixpoint of the rules over the facts. A rule application is
// skipped when its consequent pattern is already satisfied (so the
// fixpoint is idempotent); $vars bind to fresh ids d1, d2, ... with a
// per-call counter. More than `budget` new facts raises InferenceError.
FactSet saturate(const FactSet& facts, std::span<const InferenceRule> rules, int budget = 10000,
                 SaturationTrace* trace = nullptr);

// Final state of a time-variant quantity: directly-related quantities
// in ascending time order (ties by textual order); stative values set
// the running value, positive actions add, negative actions subtract.
Rational eval_tvqf(std::span<const Quantity> quantities);

// Evaluates a utility call. Arithmetic utilities resolve their two
// operand quan facts; Sum sums the values of facts unifying with the
// function pattern and satisfying the condition; TVQF needs the
// extracted quantities.
Rational eval_utility(const UtilityCall& call, const FactSet& facts,
                      std::span<const Quantity> quantities = {});

// Rule DSL: one rule per line, "antecedent => consequent", conjunction
// '&', variables ?x/$x, value expressions after '=' with + - * /.
// Optional leading "name:". '#' starts a comment.
std::vector<InferenceRule> parse_rules(const std::string& text);
InferenceRule parse_rule(const std::string& line);
std::vector<InferenceRule> load_rules(const std::string& path);
std::string rule_to_text(const InferenceRule& rule);

}  // namespace mwp
